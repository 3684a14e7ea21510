"""Tests for manifest parsing, validation, and the catalog."""

import json

import pytest

from boostlet import PluginManifest, StepSpec, ValidationError, catalog, load_manifest
from boostlet.builtins import SOBEL_WEIGHTS, builtin_manifests, find_builtin


def minimal_manifest(**overrides) -> dict:
    doc = {
        "id": "edge-demo",
        "name": "Edge Demo",
        "category": "filters",
        "pipeline": [
            {"op": "filter", "params": {"kernel": {"size": 3, "weights": list(SOBEL_WEIGHTS)}}}
        ],
    }
    doc.update(overrides)
    return doc


class TestLoadManifest:
    def test_minimal_manifest_parses(self):
        manifest = load_manifest(json.dumps(minimal_manifest()))
        assert manifest.id == "edge-demo"
        assert len(manifest.pipeline) == 1
        assert manifest.pipeline[0].op == "filter"
        assert not manifest.interactions.box

    def test_accepts_bytes(self):
        manifest = load_manifest(json.dumps(minimal_manifest()).encode("utf-8"))
        assert manifest.name == "Edge Demo"

    def test_unknown_category_rejected(self):
        with pytest.raises(ValidationError, match="category"):
            load_manifest(json.dumps(minimal_manifest(category="segmentation")))

    def test_empty_pipeline_rejected(self):
        with pytest.raises(ValidationError, match="pipeline"):
            load_manifest(json.dumps(minimal_manifest(pipeline=[])))

    def test_unknown_top_level_field_rejected(self):
        with pytest.raises(ValidationError, match="unknown fields"):
            load_manifest(json.dumps(minimal_manifest(author="someone")))

    def test_missing_required_field_rejected(self):
        doc = minimal_manifest()
        del doc["name"]
        with pytest.raises(ValidationError, match="missing"):
            load_manifest(json.dumps(doc))

    def test_unknown_op_rejected(self):
        doc = minimal_manifest(pipeline=[{"op": "sharpen"}])
        with pytest.raises(ValidationError, match="unknown op"):
            load_manifest(json.dumps(doc))

    def test_unknown_step_field_rejected(self):
        doc = minimal_manifest(pipeline=[{"op": "invert", "when": "always"}])
        with pytest.raises(ValidationError):
            load_manifest(json.dumps(doc))

    def test_bad_kernel_params_rejected(self):
        doc = minimal_manifest(
            pipeline=[{"op": "filter", "params": {"kernel": {"size": 2, "weights": [1, 2, 3, 4]}}}]
        )
        with pytest.raises(ValidationError):
            load_manifest(json.dumps(doc))

    def test_unknown_param_rejected(self):
        doc = minimal_manifest(pipeline=[{"op": "invert", "params": {"strength": 2}}])
        with pytest.raises(ValidationError, match="unknown params"):
            load_manifest(json.dumps(doc))

    def test_not_json_rejected(self):
        with pytest.raises(ValidationError):
            load_manifest(b"\x00\x01 not json")

    def test_interactions_parse(self):
        doc = minimal_manifest(interactions=["box", {"seeds": 3}])
        manifest = load_manifest(json.dumps(doc))
        assert manifest.interactions.box
        assert manifest.interactions.seeds == 3

    def test_bad_interaction_rejected(self):
        with pytest.raises(ValidationError):
            load_manifest(json.dumps(minimal_manifest(interactions=["lasso"])))

    def test_http_infer_requires_url(self):
        doc = minimal_manifest(pipeline=[{"op": "http_infer", "params": {}}])
        with pytest.raises(ValidationError, match="url"):
            load_manifest(json.dumps(doc))

    def test_round_trips_through_to_dict(self):
        manifest = load_manifest(json.dumps(minimal_manifest(interactions=["box"])))
        again = load_manifest(json.dumps(manifest.to_dict()))
        assert again == manifest


class TestBuiltins:
    def test_expected_ids_and_categories(self):
        by_id = {m.id: m for m in builtin_manifests()}
        assert by_id["sobel-edge"].category == "filters"
        assert by_id["invert"].category == "filters"
        assert by_id["histogram"].category == "data-visualization"
        assert by_id["threshold-mask"].category == "filters"

    def test_sobel_pipeline_carries_the_kernel(self):
        sobel = find_builtin("sobel-edge")
        kernel = sobel.pipeline[0].params["kernel"]
        assert kernel["size"] == 3
        assert tuple(kernel["weights"]) == SOBEL_WEIGHTS

    def test_find_builtin_miss(self):
        assert find_builtin("does-not-exist") is None


class TestCatalog:
    def test_grouped_and_sorted(self):
        listing = catalog()
        assert [m.id for m in listing] == ["histogram", "invert", "sobel-edge", "threshold-mask"]
        categories = [m.category for m in listing]
        assert categories == sorted(categories)

    def test_search_substring(self):
        assert [m.id for m in catalog(search="sob")] == ["sobel-edge"]

    def test_empty_search_returns_everything(self):
        assert catalog(search="") == catalog()

    def test_search_miss_is_empty(self):
        assert catalog(search="zzz-no-match") == []

    def test_category_filter(self):
        assert all(m.category == "filters" for m in catalog(category="filters"))
        assert len(catalog(category="filters")) == 3

    def test_filters_compose(self):
        assert catalog(category="data-visualization", search="sob") == []

    def test_loaded_manifest_included(self):
        extra = PluginManifest(
            id="custom-blur",
            name="Custom Blur",
            category="filters",
            pipeline=(StepSpec("invert"),),
        )
        listing = catalog(extra=[extra])
        assert any(m.id == "custom-blur" for m in listing)

    def test_stable_across_calls(self):
        assert catalog() == catalog()

    def test_unknown_category_rejected(self):
        with pytest.raises(ValidationError):
            catalog(category="segmentation")
