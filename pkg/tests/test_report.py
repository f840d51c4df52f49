"""Certificates: emission, serialization, and adversarial re-verification."""

import copy
import json

import pytest

from mhaar.catalog import build_entry, entries, hgr_entry
from mhaar.cayley import ConnectionMatrix
from mhaar.constructions import synthesize
from mhaar.groups import cyclic, dihedral
from mhaar.report import (
    SCHEMA_VERSION,
    TOOL_VERSION,
    CertificateCheck,
    certificate_json,
    emit,
    load_certificate,
    make_certificate,
    nonexistence_certificate,
    reverify,
    reverify_certificate,
    search_certificate,
    write_certificate,
)
from mhaar.search import SearchReport, decide_existence


KEY_ORDER = ["schema", "tool_version", "kind", "group", "m", "route",
             "matrix", "evidence", "aut_generators", "graph6"]


@pytest.fixture(scope="module")
def c6_witness():
    return hgr_entry("C6", 3)


@pytest.fixture(scope="module")
def c6_cert(c6_witness):
    return make_certificate(c6_witness, "hgr", route="unit test")


# -- emission ------------------------------------------------------------------


def test_witness_certificate_shape(c6_cert):
    assert list(c6_cert.keys()) == KEY_ORDER
    assert c6_cert["schema"] == SCHEMA_VERSION == 1
    assert c6_cert["tool_version"] == TOOL_VERSION
    assert c6_cert["kind"] == "hgr"
    assert c6_cert["route"] == "unit test"
    assert c6_cert["group"]["descriptor"] == "C6"
    assert c6_cert["group"]["order"] == 6
    assert len(c6_cert["group"]["table"]) == 6
    ev = c6_cert["evidence"]
    assert ev["aut_order"] == 6 and ev["group_order"] == 6
    assert ev["vertices"] == 18 and ev["valencies"] == [4, 4, 4]
    assert ev["regular"] and ev["diagonal_empty"] and ev["connected"]
    assert ev["orbits_are_parts"]
    assert ev["edges"] == 18 * 4 // 2
    assert isinstance(c6_cert["graph6"], str)
    for perm in c6_cert["aut_generators"]:
        assert sorted(perm) == list(range(18))


def test_pgsr_certificate():
    base = build_entry(entries(tag="C6", m=3, kind="pgsr")[0])
    cert = make_certificate(base, "pgsr")
    assert cert["kind"] == "pgsr"
    assert not cert["evidence"]["regular"]
    assert reverify(cert).ok
    # the same matrix cannot be certified under the stricter claim
    with pytest.raises(ValueError, match="not regular"):
        make_certificate(base, "hgr")


def test_refuses_invalid_witnesses():
    g = cyclic(2)
    square = ConnectionMatrix(g, 2, {(1, 2): [0, 1]})  # |Aut| = 8
    with pytest.raises(ValueError, match=r"\|Aut\| = 8 but \|G\| = 2"):
        make_certificate(square, "hgr")
    with pytest.raises(ValueError, match="kind must be one of"):
        make_certificate(square, "haar")
    withdiag = ConnectionMatrix(cyclic(3), 2, {(1, 2): [0]},
                                diagonal={1: [1, 2]})
    with pytest.raises(ValueError, match="diagonal"):
        make_certificate(withdiag, "pgsr")


def test_nonexistence_certificate_checks_the_clause():
    cert = nonexistence_certificate(dihedral(6), 3, "a")
    assert cert["kind"] == "nonexistence-classified"
    assert cert["evidence"] == {"clause": "a", "group_order": 6}
    assert reverify(cert).ok
    with pytest.raises(ValueError, match="classification says 'a'"):
        nonexistence_certificate(dihedral(6), 3, "b")
    with pytest.raises(ValueError, match="classification says None"):
        nonexistence_certificate(cyclic(6), 3, "a")


def test_search_certificate_nonexistence():
    report = decide_existence(cyclic(2), 3)
    cert = search_certificate(report, cyclic(2))
    assert cert["kind"] == "nonexistence-search"
    assert cert["route"] == "exhaustive search (normalized mode)"
    assert cert["evidence"]["examined"] == 4
    assert reverify(cert).ok


def test_search_certificate_witness():
    report = decide_existence(cyclic(6), 3)
    cert = search_certificate(report, cyclic(6))
    assert cert["kind"] == "hgr"
    assert "exhaustive search" in cert["route"]
    assert reverify(cert).ok


def test_search_certificate_refuses_early_stop():
    partial = SearchReport("C2", 2, 3, "normalized", False, 3, 4, 2, 0,
                           None, False, 0.0)
    with pytest.raises(ValueError, match="stopped early"):
        search_certificate(partial, cyclic(2))


# -- emit dispatch --------------------------------------------------------------


def test_emit_dispatch(c6_witness):
    assert emit(c6_witness)["kind"] == "hgr"
    r = synthesize(cyclic(6), 3)
    cert = emit(r)
    assert cert["kind"] == "hgr" and cert["route"].startswith("catalog entry")
    neg = synthesize(cyclic(5), 3)
    cert = emit(neg)
    assert cert["kind"] == "nonexistence-classified"
    report = decide_existence(cyclic(2), 3)
    assert emit(report, group=cyclic(2))["kind"] == "nonexistence-search"
    with pytest.raises(ValueError, match="needs the group"):
        emit(report)
    with pytest.raises(TypeError, match="cannot certify a str"):
        emit("witness")


def test_json_and_file_round_trip(c6_witness, tmp_path):
    text = certificate_json(c6_witness, kind="hgr")
    assert text.endswith("\n")
    assert reverify(text).ok  # JSON string input
    path = tmp_path / "cert.json"
    written = write_certificate(c6_witness, str(path), kind="hgr")
    loaded = load_certificate(str(path))
    assert loaded == written
    assert reverify_certificate(loaded).ok


def test_load_certificate_rejects_non_objects(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2]\n")
    with pytest.raises(ValueError, match="JSON object"):
        load_certificate(str(path))


# -- adversarial re-verification -------------------------------------------------


def tampered(cert, **changes):
    out = copy.deepcopy(cert)
    for dotted, value in changes.items():
        holder = out
        *path, last = dotted.split("__")
        for key in path:
            holder = holder[key]
        if value is None:
            del holder[last]
        else:
            holder[last] = value
    return out


def test_reverify_catches_evidence_tampering(c6_cert):
    for dotted, bad, field in [
            ("evidence__aut_order", 12, "evidence.aut_order"),
            ("evidence__edges", 99, "evidence.edges"),
            ("evidence__valencies", [4, 4, 5], "evidence.valencies"),
            ("evidence__connected", False, "evidence.connected"),
            ("evidence__orbits_are_parts", False, "evidence.orbits_are_parts"),
            ("graph6", "A_", "graph6"),
            ("schema", 2, "schema"),
            ("kind", "haar", "kind"),
            ("group__order", 7, "group.order"),
    ]:
        check = reverify(tampered(c6_cert, **{dotted: bad}))
        assert not check.ok
        assert check.field == field, (dotted, check)
        assert "certificate fails at" in str(check)


def test_reverify_catches_matrix_tampering(c6_cert):
    bad = copy.deepcopy(c6_cert)
    elems = bad["matrix"][0]["elems"]
    elems[-1] = (elems[-1] + 1) % 6 if (elems[-1] + 1) % 6 not in elems else 5
    check = reverify(bad)
    assert not check.ok
    assert check.field.startswith("evidence.") or check.field == "graph6"


def test_reverify_catches_generator_tampering(c6_cert):
    bad = copy.deepcopy(c6_cert)
    perm = bad["aut_generators"][0]
    perm[0], perm[1] = perm[1], perm[0]
    check = reverify(bad)
    assert not check.ok
    assert check.field == "aut_generators"


def test_reverify_catches_missing_fields(c6_cert):
    check = reverify(tampered(c6_cert, evidence__aut_order=None))
    assert not check.ok and check.field == "evidence.aut_order"
    assert check.detail == "field missing"
    check = reverify(tampered(c6_cert, graph6=None))
    assert not check.ok and check.field == "graph6"
    assert check.detail == "field missing"
    # a missing m already breaks the matrix rebuild
    check = reverify(tampered(c6_cert, m=None))
    assert not check.ok and check.field == "matrix"


def test_reverify_rejects_broken_group_tables(c6_cert):
    bad = copy.deepcopy(c6_cert)
    bad["group"]["table"][0][0] = 3  # row 0 is no longer a permutation
    check = reverify(bad)
    assert not check.ok and check.field == "group.table"


def test_reverify_classified_tampering():
    cert = nonexistence_certificate(dihedral(6), 3, "a")
    check = reverify(tampered(cert, m=4))
    assert not check.ok and check.field == "evidence.clause"
    assert "does not exclude" in check.detail
    check = reverify(tampered(cert, evidence__clause="b"))
    assert not check.ok and check.field == "evidence.clause"


def test_reverify_search_tampering():
    cert = search_certificate(decide_existence(cyclic(2), 3), cyclic(2))
    check = reverify(tampered(cert, evidence__examined=17))
    assert not check.ok and check.field == "evidence.examined"
    # claiming searched nonexistence for a pair that has witnesses
    lying = tampered(cert, group__table=cyclic(6).to_json()["table"],
                     group__order=6, evidence__group_order=6)
    check = reverify(lying)
    assert not check.ok and check.field == "kind"
    assert "finds a witness" in check.detail


def test_reverify_garbage_inputs():
    assert reverify("{not json").field == "json"
    assert reverify("[1, 2]").field == "json"
    assert not reverify("{}").ok
    check = CertificateCheck(True)
    assert bool(check) and str(check) == "certificate verifies"
