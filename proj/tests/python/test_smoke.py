"""Smoke tests for the pyralg module and the CLI binary.

The build directory of the extension comes in through PYRALG_DIR and the CLI
path through RALG_CLI; both are set by ctest.
"""

import os
import subprocess
import sys

import pytest

sys.path.insert(0, os.environ["PYRALG_DIR"])

import pyralg  # noqa: E402

CLI = os.environ["RALG_CLI"]
DATA = os.environ["RALG_DATA"]


def test_catalog_and_decisions():
    p3 = pyralg.catalog("predecessor-trunc(3)")
    verdict = pyralg.decide_unary_finite(p3)
    assert verdict["status"] == "Ramsey"
    assert [c["route"] for c in verdict["certificates"]] == ["id", "p", "p.p", "p.p.p"]

    swap = pyralg.catalog("swap2")
    assert pyralg.decide_unary_finite(swap)["status"] == "NotRamsey"
    assert pyralg.decide_finite(swap)["status"] == "NotRamsey"


def test_closure_and_subalgebras():
    p3 = pyralg.catalog("predecessor-trunc(3)")
    assert pyralg.closure(p3, [2]) == [0, 1, 2]
    subs = pyralg.subalgebras(p3)
    assert subs == [[], [0], [0, 1], [0, 1, 2], [0, 1, 2, 3]]
    assert pyralg.idempotents(pyralg.catalog("zmod(3)")) == [0]


def test_constructions():
    z2 = pyralg.catalog("zmod(2)")
    z3 = pyralg.catalog("zmod(3)")
    prod = pyralg.product([z2, z3])
    assert prod.size == 6
    iso = pyralg.isomorphism_search(prod, pyralg.catalog("zmod(6)"))
    assert iso is not None

    z4 = pyralg.catalog("zmod(4)")
    assert pyralg.congruence_closure(z4, [(0, 2)]) == [[0, 2], [1, 3]]
    quotient, projection = pyralg.quotient(z4, [[0, 2], [1, 3]])
    assert quotient.size == 2
    assert pyralg.check_homomorphism(z4, quotient, projection) == (True, True)


def test_rule_search_and_fr():
    pred = pyralg.catalog("predecessor-rule")
    result = pyralg.search_unary_rule(pred, 17, max_depth=20)
    assert result["status"] == "Ramsey"
    assert result["word"] == ".".join(["p"] * 17)

    z = pyralg.catalog("z-shift-rule")
    assert pyralg.search_unary_rule(z, 9)["status"] == "NotRamsey"

    dlimit = pyralg.catalog("dlimit-rule")
    assert pyralg.fr_prefix(dlimit, [0, 1, 2], max_width=3, max_size=2) == [0, 1, 2]
    report = pyralg.homogeneity_check(dlimit, [2, 5], "evens", 2, 1)
    assert report["verdict"] == "mixed"


def test_algebra_roundtrip_and_verification():
    text = pyralg.serialize_algebra(pyralg.catalog("dlimit-trunc(4)"))
    alg = pyralg.parse_algebra(text)
    assert alg == pyralg.catalog("dlimit-trunc(4)")
    assert pyralg.verify_dlimit_range(8, 3, 2)
    assert pyralg.fixed_point_density(pyralg.catalog("predecessor-trunc(5)"))


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_cli_exit_codes():
    ramsey = run_cli("check", os.path.join(DATA, "p3.alg"))
    assert ramsey.returncode == 0
    assert "verdict Ramsey" in ramsey.stdout

    not_ramsey = run_cli("check", os.path.join(DATA, "swap2.alg"))
    assert not_ramsey.returncode == 1
    assert "verdict NotRamsey" in not_ramsey.stdout

    unknown = run_cli("check", "predecessor-rule", "--start", "9", "--max-depth", "3")
    assert unknown.returncode == 2
    assert "verdict Unknown" in unknown.stdout

    bad = run_cli("check", os.path.join(DATA, "no-such-file.alg"))
    assert bad.returncode == 3


def test_cli_reports_are_deterministic():
    first = run_cli("subalgebras", "dlimit-trunc(4)")
    second = run_cli("subalgebras", "dlimit-trunc(4)")
    assert first.returncode == 0
    assert first.stdout == second.stdout


@pytest.mark.parametrize("name", ["zmod(5)", "predecessor-trunc(6)", "swap2"])
def test_cli_roundtrip_through_files(tmp_path, name):
    serialized = pyralg.serialize_algebra(pyralg.catalog(name))
    path = tmp_path / "alg.alg"
    path.write_text(serialized)
    listed = run_cli("idempotents", str(path))
    assert listed.returncode == 0
    direct = run_cli("idempotents", name)
    assert listed.stdout == direct.stdout


def test_cli_constructions(tmp_path):
    prod = run_cli("product", "zmod(2)", "zmod(3)")
    assert prod.returncode == 0
    assert "universe 6" in prod.stdout

    part = tmp_path / "mod2.part"
    part.write_text("partition 2\nblock 0 2\nblock 1 3\n")
    quotient = run_cli("quotient", "zmod(4)", str(part))
    assert quotient.returncode == 0
    assert "universe 2" in quotient.stdout
    assert "map 0 1 0 1" in quotient.stdout

    congruent = run_cli("congruence-check", "zmod(4)", str(part))
    assert congruent.returncode == 0
    assert "congruence yes" in congruent.stdout

    bad_part = tmp_path / "bad.part"
    bad_part.write_text("partition 2\nblock 0 1\nblock 2 3\n")
    broken = run_cli("congruence-check", "zmod(4)", str(bad_part))
    assert broken.returncode == 1
    assert "violation" in broken.stdout

    closed = run_cli("congruence-close", "zmod(4)", "0,2")
    assert closed.returncode == 0
    assert closed.stdout == "partition 2\nblock 0 2\nblock 1 3\n"

    map_file = tmp_path / "mod2.map"
    map_file.write_text("map 0 1 0 1\n")
    hom = run_cli("hom-check", "zmod(4)", "zmod(2)", str(map_file))
    assert hom.returncode == 0
    assert "homomorphism yes" in hom.stdout
    assert "surjective yes" in hom.stdout

    iso = run_cli("iso", "zmod(2)", "zmod(2)")
    assert iso.returncode == 0
    assert "map 0 1" in iso.stdout
    not_iso = run_cli("iso", "zmod(4)", "zmod(2)")
    assert not_iso.returncode == 1


def test_cli_extension_and_terms():
    fill = run_cli("extend", "predecessor-trunc(2)", "--fill", "p(3)=3", "--check")
    assert fill.returncode == 0
    assert "table p 0 0 1 3" in fill.stdout
    assert "verdict Ramsey" in fill.stdout

    every = run_cli("extend", "predecessor-trunc(2)", "--all", "--check")
    assert every.returncode == 0
    assert every.stdout.count("verdict Ramsey") == 4

    terms = run_cli("terms", "dlimit-rule", "--max-width", "3", "--max-size", "2")
    assert terms.returncode == 0
    assert terms.stdout.splitlines() == [
        "x0",
        "f(x0,x1)",
        "f(x0,f(x1,x2))",
        "f(f(x0,x1),x2)",
    ]


def test_cli_reduction_lab(tmp_path):
    seq = tmp_path / "pair.seq"
    seq.write_text("seq 1,3\n")
    fr = run_cli("fr", "nat-plus-is-not-a-catalog-name", str(seq))
    assert fr.returncode == 3  # unknown algebra names are input errors

    fr = run_cli("fr", "dlimit-rule", str(seq), "--max-width", "2", "--max-size", "1")
    assert fr.returncode == 0
    assert fr.stdout == "fr 1,2,3\n"  # id(1), id(3), f(1,3)=2

    reduce = run_cli("reduce", "dlimit-rule", str(seq), "--out-len", "1",
                     "--max-width", "2", "--max-size", "1")
    assert reduce.returncode == 0
    assert "witness output 2 steps f(x0,x1)@0,1" in reduce.stdout  # f(1,3)=2

    mixed = run_cli("homog", "dlimit-rule", str(seq), "--set", "odds")
    assert mixed.returncode == 1
    assert "verdict mixed" in mixed.stdout

    evens_seq = tmp_path / "zero.seq"
    evens_seq.write_text("seq 0\n")
    all_in = run_cli("homog", "predecessor-rule", str(evens_seq), "--set", "evens")
    assert all_in.returncode == 0
    assert "verdict all-in" in all_in.stdout

    # table algebras work through the same surface
    finite_fr = run_cli("fr", "zmod(4)", str(seq), "--max-width", "2",
                        "--max-size", "1")
    assert finite_fr.returncode == 0
    assert finite_fr.stdout == "fr 0,1,3\n"  # id(1), id(3), 1+3 mod 4


def test_cli_topology_output():
    topo = run_cli("topology", "predecessor-trunc(3)")
    assert topo.returncode == 0
    assert topo.stdout == (
        "basis 5\n"
        "set -\n"
        "set 0\n"
        "set 0,1\n"
        "set 0,1,2\n"
        "set 0,1,2,3\n"
        "density dense\n"
    )
