import pytest

from quadcheck import CatalogFormatError, builtin_catalog
from quadcheck.catalog_io import load_catalog_file, load_catalog_text, serialize_catalog
from quadcheck.expressions import parse_expression, print_expression

MINIMAL = """identity 1
lhs
const : 1
rhs
const : 1
end
"""


def test_export_then_load_equals_builtin():
    cat = builtin_catalog()
    assert load_catalog_text(serialize_catalog(cat)) == cat


def test_serialization_is_byte_reproducible():
    a = serialize_catalog(builtin_catalog())
    b = serialize_catalog(builtin_catalog())
    assert a == b


def test_load_from_file(tmp_path):
    path = tmp_path / "catalog.txt"
    path.write_text(serialize_catalog(builtin_catalog()), encoding="utf-8")
    assert load_catalog_file(path) == builtin_catalog()


def test_all_catalog_side_expressions_round_trip():
    sides = 0
    for identity in builtin_catalog():
        for side in (identity.lhs, identity.rhs):
            sides += 1
            for term in side.terms:
                printed = print_expression(term.integrand)
                assert parse_expression(printed) == term.integrand
                if hasattr(term.interval, "upper"):
                    bound = print_expression(term.interval.upper)
                    assert parse_expression(bound) == term.interval.upper
            if side.exact_constant is not None:
                printed = print_expression(side.exact_constant)
                assert parse_expression(printed) == side.exact_constant
    assert sides == 24


def test_duplicate_identity_ids_rejected():
    text = MINIMAL + MINIMAL.replace("identity 1", "identity 1")
    with pytest.raises(CatalogFormatError) as info:
        load_catalog_text(text)
    assert "duplicate identity id 1" in str(info.value)
    assert "line 1" in str(info.value)
    assert info.value.line == 7


def test_unknown_identifier_reports_line_and_position():
    text = "identity 3\nlhs\nintegral 0 inf : sinhh(x)\nrhs\nconst : 1\nend\n"
    with pytest.raises(CatalogFormatError) as info:
        load_catalog_text(text)
    assert info.value.line == 3
    assert "sinhh" in str(info.value)
    assert "offset" in str(info.value)


def test_missing_end_rejected():
    with pytest.raises(CatalogFormatError):
        load_catalog_text("identity 1\nlhs\nconst : 1\nrhs\nconst : 1\n")


def test_missing_side_rejected():
    with pytest.raises(CatalogFormatError) as info:
        load_catalog_text("identity 1\nlhs\nconst : 1\nend\n")
    assert "rhs" in str(info.value)


def test_duplicate_side_rejected():
    text = "identity 1\nlhs\nconst : 1\nlhs\nconst : 2\nrhs\nconst : 3\nend\n"
    with pytest.raises(CatalogFormatError) as info:
        load_catalog_text(text)
    assert "duplicate side" in str(info.value)


def test_item_outside_side_rejected():
    with pytest.raises(CatalogFormatError):
        load_catalog_text("identity 1\nconst : 1\nend\n")


def test_bad_bound_rejected():
    text = "identity 1\nlhs\nintegral 2 inf : x\nrhs\nconst : 1\nend\n"
    with pytest.raises(CatalogFormatError) as info:
        load_catalog_text(text)
    assert "bound" in str(info.value)


def test_inf_lower_bound_rejected():
    text = "identity 1\nlhs\nintegral inf inf : x\nrhs\nconst : 1\nend\n"
    with pytest.raises(CatalogFormatError):
        load_catalog_text(text)


def test_semi_infinite_must_start_at_zero():
    text = "identity 1\nlhs\nintegral 1 inf : x\nrhs\nconst : 1\nend\n"
    with pytest.raises(CatalogFormatError):
        load_catalog_text(text)


def test_expression_bounds_parse():
    text = "identity 9\nlhs\nintegral 0 (exp(-pi/2)) : x\nrhs\nconst : 1\nend\n"
    [identity] = load_catalog_text(text)
    term = identity.lhs.terms[0]
    assert term.interval.upper == parse_expression("exp(-pi/2)")


def test_variable_bound_rejected_at_load_time():
    text = "identity 1\nlhs\nintegral 0 (x + 1) : x\nrhs\nconst : 1\nend\n"
    with pytest.raises(CatalogFormatError) as info:
        load_catalog_text(text)
    assert "constant" in str(info.value)


def test_comments_and_blank_lines_tolerated():
    text = "# a comment\n\nidentity 1\nlhs\nconst : 1\n\nrhs\nconst : 2\nend\n"
    [identity] = load_catalog_text(text)
    assert identity.id == 1


def test_empty_catalog_rejected():
    with pytest.raises(CatalogFormatError):
        load_catalog_text("\n# nothing here\n")


def test_loader_rewrites_eagerly():
    text = "identity 1\nlhs\nintegral 0 inf : exp(-x^2)/cosh(x)\nrhs\nconst : 1\nend\n"
    [identity] = load_catalog_text(text)
    from quadcheck.expressions import StableKernel

    term = identity.lhs.terms[0]
    assert term.rewritten != term.integrand
    assert isinstance(term.rewritten.right, StableKernel)
