"""Host-agnostic image-processing plugin engine.

Plugins (boostlets) acquire pixels from a visualization host through a
uniform adapter protocol, process them, and commit results back. A
file-backed headless host and a pixel-diff regression harness make the
whole engine testable without a browser.
"""

from .builtins import SOBEL_WEIGHTS, builtin_manifests, find_builtin
from .codec import EncodedImage, decode_png, encode_png
from .errors import (
    AcquisitionError,
    BoostletError,
    CommitError,
    ConfigurationError,
    DecodeError,
    HttpError,
    HttpTimeoutError,
    InteractionCancelled,
    NoSurfaceError,
    RegistrationError,
    RemoteError,
    TransportError,
    UnsupportedFormatError,
    ValidationError,
)
from .harness import (
    DiffReport,
    RegressionCase,
    SuiteReport,
    bundled_suite_path,
    diff,
    load_case,
    run_case,
    run_suite,
)
from .hosts import (
    AdapterRegistry,
    FallbackAdapter,
    FileHost,
    FileHostAdapter,
    Host,
    HostAdapter,
    MemoryHost,
    MemoryHostAdapter,
    SurfaceInfo,
    default_registry,
    select_largest_surface,
)
from .http_client import HttpExchange, send_http_post
from .interaction import (
    InteractionSource,
    Rect,
    ScriptedSource,
    SeedPoint,
    crop,
    request_box,
    request_seeds,
)
from .manifest import PluginManifest, StepSpec, catalog, load_manifest
from .pixels import (
    Histogram,
    Kernel,
    Mask,
    PixelBuffer,
    apply_mask,
    compute_histogram,
    convolve,
    grayscale_to_rgba,
    harden_mask,
    invert,
    rgba_to_grayscale,
)
from .runtime import Hint, RunReport, Session, StepRecord, run_plugin

__version__ = "0.1.0"
