import json

import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from src.data_schema.surface import BasicEndDescriptor, EndTree, FluteDescriptor, LengthGenerator
from src.FluteType.data_pipeline.generators import (
    expand_beta_lengths,
    expand_lengths,
    parse_inline_generator,
    parse_inline_pattern,
    pattern_indices,
)
from src.FluteType.data_pipeline.surface_loader import flute_violations, parse_surface, validate_flute
from src.FluteType.exceptions import DomainError, HypothesisRefusal, SchemaError, ValidationFailure
from tests.conftest import close

TREE_YAML = """
kind: end-tree
label: root
lengths: [1, 1, 2, 3, 4, 5]
half_twist_indices: [1, 2]
declared_infinite: true
beta_lengths: [1, 1, 0, 1, 1, 1]
beta_bound: 2
children:
  - attach_at: 1
    node:
      kind: flute
      lengths: [1, 1, 2, 2]
      half_twist_indices: [1, 2, 3, 4]
      declared_infinite: true
  - attach_at: 2
    node:
      kind: finite-area
"""


def test_plog_clamps_first_term():
    lengths = expand_lengths(LengthGenerator(kind="p-log-n", params={"p": 2}), 4)
    assert lengths[0] == mp.mpf(1e-3)
    assert [close(x, 2 * mp.log(n)) for n, x in enumerate(lengths[1:], start=2)] == [True] * 3


def test_paired_generator():
    g = LengthGenerator(kind="paired", base=LengthGenerator.explicit([1, 2, 3, 4]))
    assert expand_lengths(g, 4) == [2, 2, 4, 4]


def test_exponential_generator():
    lengths = expand_lengths(parse_inline_generator("exp:e"), 3)
    assert all(close(x, mp.e ** n) for n, x in enumerate(lengths, start=1))


def test_decreasing_explicit_list_names_index():
    with pytest.raises(DomainError) as exc:
        expand_lengths(LengthGenerator.explicit([2, 1, 3]), 3)
    assert exc.value.index == 2


@given(st.integers(1, 40), st.integers(0, 40))
def test_expansion_is_prefix_stable(N, extra):
    g = parse_inline_generator("power:0.5:1.5")
    assert expand_lengths(g, N) == expand_lengths(g, N + extra)[:N]


@pytest.mark.parametrize("spec, kind", [
    ("plog:2.5", "p-log-n"),
    ("power:1:2", "power"),
    ("exp:2:0.5", "exponential"),
    ("const:3", "constant"),
    ("pairs-of:plog:2", "paired"),
])
def test_inline_generators(spec, kind):
    assert parse_inline_generator(spec).kind == kind


def test_inline_list_generator_reads_file(tmp_path):
    (tmp_path / "lengths.txt").write_text("1, 2\n3 5\n")
    g = parse_inline_generator("list:lengths.txt", tmp_path)
    assert expand_lengths(g, 4) == [1, 2, 3, 5]


def test_unknown_inline_generator():
    with pytest.raises(DomainError):
        parse_inline_generator("zeta:2")


@pytest.mark.parametrize("spec, N, expected", [
    ("none", 10, []),
    ("all", 4, [1, 2, 3, 4]),
    ("list:2,5,7", 10, [2, 5, 7]),
    ("factorial", 24, [1, 2, 6, 24]),
    ("powers:2", 10, [1, 4, 9]),
    ("adjacent-powers:4", 100, [1, 2, 16, 17, 81, 82]),
])
def test_pattern_indices(spec, N, expected):
    assert pattern_indices(spec, N) == expected


def test_empty_inline_pattern_is_never_infinite():
    assert not parse_inline_pattern("none", 10).declared_infinite
    assert parse_inline_pattern("factorial", 10).declared_infinite


def test_beta_lengths_allow_zeros():
    assert expand_beta_lengths(LengthGenerator.explicit([0, 3, 1]), 5) == [0, 3, 1]


def test_valid_flute_has_no_violations():
    flute = FluteDescriptor.from_lengths([1, 2, 3], [1, 2, 3], True)
    assert flute_violations(flute) == []
    assert validate_flute(flute) is flute


def test_decreasing_flute_reports_index():
    with pytest.raises(ValidationFailure) as exc:
        validate_flute(FluteDescriptor.from_lengths([2, 1, 3]))
    assert exc.value.violations[0].index == 2
    assert exc.value.violations[0].code == "decrease"


def test_declared_infinite_without_witness():
    codes = [v.code for v in flute_violations(FluteDescriptor.from_lengths([1, 2, 3], (), True))]
    assert "no-witness" in codes


def test_short_list_and_bad_entries():
    flute = FluteDescriptor(generator=LengthGenerator.explicit([1, "x", -1]), truncation=5)
    codes = {v.code for v in flute_violations(flute)}
    assert codes == {"short-list", "not-a-number", "nonpositive"}


def test_parse_flute_yaml_with_pattern():
    flute = parse_surface("kind: flute\ngenerator: {kind: p-log-n, params: {p: 2}}\npattern: factorial\n"
                          "declared_infinite: true\ntruncation: 30\n")
    assert isinstance(flute, FluteDescriptor)
    assert flute.twists.half_indices == (1, 2, 6, 24)
    assert flute_violations(flute) == []


def test_parse_json_document(tmp_path):
    path = tmp_path / "flute.json"
    path.write_text(json.dumps({"kind": "flute", "lengths": [1, 2, 3, 4], "label": "small"}))
    flute = parse_surface(path)
    assert flute.truncation == 4
    assert flute.label == "small"


def test_parse_basic_end():
    end = parse_surface({"kind": "basic-end", "lengths": [1, 2, 3], "beta_generator": {"kind": "constant",
                         "params": {"value": 1}}, "beta_bound": 1})
    assert isinstance(end, BasicEndDescriptor)
    assert end.beta_lengths == (1, 1, 1)


def test_unbounded_beta_without_bound_is_refused():
    with pytest.raises(HypothesisRefusal) as exc:
        parse_surface({"kind": "basic-end", "lengths": [1, 2], "beta_lengths": [1, 2], "beta_unbounded": True})
    assert exc.value.hypothesis == "beta-bounded"


def test_parse_end_tree():
    tree = parse_surface(TREE_YAML)
    assert isinstance(tree, EndTree)
    assert tree.size == 3
    assert [node_id for node_id, _ in tree.iter_nodes()] == ["root", "root/1", "root/2"]


@pytest.mark.parametrize("edit, path", [
    (lambda d: d.pop("truncation"), "$"),
    (lambda d: d.update(truncation="ten"), "$.truncation"),
    (lambda d: d.update(generator={"kind": "zeta"}), "$.generator"),
    (lambda d: d.update(kind="torus"), "$.kind"),
])
def test_schema_errors_carry_paths(edit, path):
    doc = {"kind": "flute", "generator": {"kind": "p-log-n", "params": {"p": 2}}, "truncation": 10}
    edit(doc)
    with pytest.raises(SchemaError) as exc:
        parse_surface(doc)
    assert exc.value.path == path


def test_child_on_puncture_is_rejected():
    with pytest.raises(SchemaError) as exc:
        parse_surface(TREE_YAML.replace("attach_at: 2", "attach_at: 3"))
    assert exc.value.path == "$.children[1].attach_at"


def test_duplicate_attachment_is_rejected():
    with pytest.raises(SchemaError):
        parse_surface(TREE_YAML.replace("attach_at: 2", "attach_at: 1"))


def test_children_only_on_basic_ends():
    doc = {"kind": "end-tree", "root_kind": "flute", "lengths": [1, 2, 3],
           "children": [{"attach_at": 1, "node": {"kind": "finite-area"}}]}
    with pytest.raises(SchemaError) as exc:
        parse_surface(doc)
    assert exc.value.path == "$.children"
