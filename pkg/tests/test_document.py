import json
from pathlib import Path

import pytest

from wha.document import (
    emit,
    emit_algebra,
    emit_functional,
    parse,
    parse_algebra,
    parse_document,
    parse_field,
    parse_functional,
)
from wha.errors import ParseError
from wha.examples import cyclic_table, group_algebra, m2z2, matrix_algebra
from wha.hopf_modules import check_whm, example_dual_module, regular_module
from wha.linear_core import Field

GOLDEN = Path(__file__).parent / "golden"
Q = Field.rationals()


def _same(A, B):
    F = A.F
    assert F.kind == B.F.kind and A.dim == B.dim
    for attr in ("mult", "unit", "comult", "counit", "antipode"):
        assert F.equal(getattr(A, attr), getattr(B, attr)), attr
    assert (A.star is None) == (B.star is None)
    if A.star is not None:
        assert F.equal(A.star, B.star)
    assert list(A.labels) == list(B.labels) and A.name == B.name


def test_round_trip_every_example(examples):
    for name, A in examples.items():
        text = emit(A)
        B = parse(text)
        _same(A, B)
        assert emit(B) == text, name


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.wha.json")), ids=lambda p: p.name)
def test_golden_files_are_canonical(path):
    text = path.read_text()
    assert emit(parse(text)) == text


def _z2_text():
    return emit(group_algebra(cyclic_table(2), Q, name="Q[Z2]"))


def _edit(mutate):
    data = json.loads(_z2_text())
    mutate(data)
    return json.dumps(data, indent=2)


def test_out_of_range_names_entry_and_line():
    text = (GOLDEN / "invalid" / "out_of_range.wha.json").read_text()
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert err.line is not None and str(err).startswith(f"line {err.line}:")
    assert "mult entry" in str(err) and "out of range" in str(err)
    assert "5" in text.splitlines()[err.line - 1]


def test_unknown_section_is_rejected():
    text = _edit(lambda d: d.update(extra=1))
    with pytest.raises(ParseError, match="unknown section 'extra'"):
        parse(text)


def test_missing_section_is_rejected():
    text = _edit(lambda d: d.pop("antipode"))
    with pytest.raises(ParseError, match="missing required section 'antipode'"):
        parse(text)


def test_malformed_json_has_a_line():
    with pytest.raises(ParseError) as info:
        parse('{\n  "format": "wha",\n  oops\n}')
    assert info.value.line == 3


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.update(field={"kind": "R"}), "unknown field kind"),
    (lambda d: d.update(field={"kind": "GF"}), "integer 'p'"),
    (lambda d: d.update(version=2), "unsupported version"),
    (lambda d: d.update(format="algebra"), "format must be"),
    (lambda d: d["unit"].__setitem__(0, 1), "must be a string"),
    (lambda d: d["unit"].__setitem__(0, "x"), "not a rational"),
    (lambda d: d["mult"].append(d["mult"][0]), "duplicate index"),
    (lambda d: d.update(antipode=[["1", "0"]]), "must have 2 rows"),
])
def test_bad_fields(mutate, message):
    with pytest.raises(ParseError, match=message):
        parse(_edit(mutate))


def test_star_over_finite_field_is_rejected():
    text = _edit(lambda d: (d.update(field={"kind": "GF", "p": 5}),
                            d.update(star=[["1", "0"], ["0", "1"]])))
    with pytest.raises(ParseError, match="Q or C"):
        parse(text)


def test_hand_written_m2z2():
    # M2 over Z2 on matrix units, written out by hand
    units = ["e11", "e12", "e21", "e22"]
    idx = {u: i for i, u in enumerate(units)}
    mult = []
    for a in units:
        for b in units:
            if a[2] == b[1]:
                mult.append([idx[a], idx[b], idx["e" + a[1] + b[2]], "1"])
    comult = [[idx[u], idx[u], idx[u], "1"] for u in units]
    antipode = [["0"] * 4 for _ in units]
    for u in units:
        antipode[idx["e" + u[2] + u[1]]][idx[u]] = "1"
    doc = {"format": "wha", "version": 1, "name": "M2(Z2)", "field": {"kind": "Q"}, "dim": 4,
           "labels": units, "mult": mult, "unit": ["1", "0", "0", "1"], "comult": comult,
           "counit": ["1", "1", "1", "1"], "antipode": antipode}
    B = parse(json.dumps(doc))
    A = m2z2()
    for attr in ("mult", "unit", "comult", "counit", "antipode"):
        assert Q.equal(getattr(A, attr), getattr(B, attr)), attr


@pytest.mark.parametrize("spec, kind, p", [
    ("Q", "Q", None),
    ("c", "C", None),
    ("GF(7)", "GF", 7),
    ("GF5", "GF", 5),
    ({"kind": "GF", "p": 3}, "GF", 3),
])
def test_parse_field_variants(spec, kind, p):
    F = parse_field(spec)
    assert F.kind == kind
    if p is not None:
        assert F.p == p


def test_parse_field_tolerance():
    assert parse_field({"kind": "C", "tol": 1e-6}).tol == 1e-6
    assert parse_field("C", tol=1e-3).tol == 1e-3
    with pytest.raises(ValueError):
        parse_field({"kind": "Q", "extra": 1})


def test_finite_field_values():
    F = Field.gf(7)
    assert F.parse("5 mod 7") == 5
    assert F.parse("-1") == 6
    assert F.parse("1/2") == 4
    with pytest.raises(ValueError):
        F.parse("5 mod 11")
    with pytest.raises(ValueError):
        F.parse("1/7")


def test_algebra_and_functional_files():
    B = matrix_algebra(2, Q)
    B2 = parse_algebra(emit_algebra(B))
    assert Q.equal(B2.mult, B.mult) and Q.equal(B2.unit, B.unit)
    assert list(B2.labels) == list(B.labels)
    values = parse_functional(emit_functional(Q, B.E), Q, B.dim)
    assert Q.equal(values, B.E)
    with pytest.raises(ParseError, match="length 4"):
        parse_functional(emit_functional(Q, [1, 2]), Q, 4)
    with pytest.raises(ParseError, match="unknown section"):
        parse_functional('{"format": "functional", "version": 1, "values": [], "x": 0}', Q, 0)


def test_modules_section_round_trip():
    A = m2z2()
    mods = [example_dual_module(A), regular_module(A)]
    text = emit(A, mods)
    doc = parse_document(text)
    assert len(doc.modules) == 2
    for M, N in zip(mods, doc.modules):
        assert Q.equal(M.action, N.action) and Q.equal(M.coaction, N.coaction)
        assert check_whm(N).passed
    assert emit(doc.algebra, doc.modules) == text


def test_bad_module_key():
    data = json.loads(emit(m2z2(), [regular_module(m2z2())]))
    data["whm"][0]["bogus"] = 1
    with pytest.raises(ParseError, match="unknown module key 'bogus'"):
        parse_document(json.dumps(data))


def test_report_section_survives():
    A = group_algebra(cyclic_table(2), Q)
    doc = parse_document(emit(A, report={"is_wha": True}))
    assert doc.report == {"is_wha": True}
