"""Command line behavior, including the pinned golden outputs."""

import contextlib
import io

import pytest

from unifkit import formats
from unifkit.cli import DISPATCH, main
from unifkit.dmod import corpus
from unifkit.gtop import constant_sheaf, sierpinski_pair
from unifkit.quniform import pervin, symmetrize

SIER = ("space sierpinski 2\nelements p0 p1\n"
        "open\nopen p1\nopen p0 p1\ndense p1\n")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as e:
            code = e.code
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def sier_file(tmp_path):
    p = tmp_path / "sierpinski.space"
    p.write_text(SIER)
    return str(p)


@pytest.fixture
def airy_file(tmp_path):
    spec = next(e for e in corpus() if e.name == "airy").spec
    p = tmp_path / "airy.op"
    p.write_text(formats.print_operator(spec))
    return str(p)


@pytest.fixture
def pervin_file(tmp_path):
    u = pervin(sierpinski_pair().xhat)
    p = tmp_path / "pervin.space"
    p.write_text(formats.print_space(formats.SpaceFile.from_uniformity("sp", u)))
    return str(p)


@pytest.fixture
def sym_file(tmp_path):
    u = symmetrize(pervin(sierpinski_pair().xhat))
    p = tmp_path / "sym.space"
    p.write_text(formats.print_space(formats.SpaceFile.from_uniformity("s", u)))
    return str(p)


# the three pinned goldens

def test_golden_report_ends_agree_true(airy_file):
    code, out, _ = run(["dmod", "report", airy_file])
    assert code == 0
    assert out.splitlines()[-1] == "agree=true"


def test_golden_l7_items(sier_file):
    code, out, _ = run(["gtop", "l7", sier_file])
    lines = out.splitlines()
    for i in range(1, 6):
        assert "item%d=pass" % i in lines
    assert "item7=fail(expected)" in lines
    assert code == 0


def test_golden_empty_basis(tmp_path):
    p = tmp_path / "empty-basis.space"
    p.write_text("space nothing 2\nelements a b\n")
    code, _, err = run(["check", str(p)])
    assert code == 2
    assert "empty basis" in err


# the rest of the surface

def test_check_reports_axioms(pervin_file):
    code, out, _ = run(["check", pervin_file])
    assert code == 0
    assert "quasi_uniformity=true" in out.splitlines()


def test_check_parse_error_cites_position(tmp_path):
    p = tmp_path / "bad.space"
    p.write_text("space x 1\nelements a\nfrob a\n")
    code, _, err = run(["check", str(p)])
    assert code == 2
    assert ":3:1:" in err


def test_convert_round_trip(tmp_path, sym_file):
    code, w2t, _ = run(["convert", "--weil-to-tukey", sym_file])
    assert code == 0
    cov = tmp_path / "cov.space"
    cov.write_text(w2t)
    code, out, _ = run(["check", str(cov)])
    assert code == 0
    assert "tukey_family=true" in out.splitlines()
    code, back, _ = run(["convert", "--tukey-to-weil", str(cov)])
    assert code == 0
    assert "entourage" in back


def test_derive_topology(pervin_file):
    code, out, _ = run(["derive", "--topology", pervin_file])
    assert code == 0
    assert "open p1" in out.splitlines()


def test_derive_proximity(sym_file):
    code, out, _ = run(["derive", "--proximity", sym_file])
    assert code == 0
    assert all(l.startswith("near ") for l in out.splitlines())


def test_pervin_kunzi_emit_entourages(sier_file):
    for sub in ("pervin", "kunzi"):
        code, out, _ = run([sub, sier_file])
        assert code == 0
        assert "entourage E1" in out


def test_quotient_emits_space_and_mapping(sym_file):
    code, out, _ = run(["quotient", sym_file])
    assert code == 0
    assert out.startswith("space ")
    assert any(l.startswith("# map ") for l in out.splitlines())


def test_tower_build_and_depth_override(tmp_path):
    p = tmp_path / "met.tower"
    p.write_text("tower metric_disk depth=6\n")
    code, out, _ = run(["tower", "build", str(p), "--depth", "3"])
    assert code == 0
    assert "depth=3" in out.splitlines()
    assert "star=ok" in out.splitlines()


def test_tower_threads(tmp_path):
    p = tmp_path / "p2.tower"
    p.write_text("tower padic_disk depth=3 p=2\n")
    code, out, _ = run(["tower", "threads", str(p)])
    assert code == 0
    assert sum(1 for l in out.splitlines() if l.startswith("end ")) == 8


def test_tower_uniform_cover_verdicts(tmp_path):
    sec = tmp_path / "sec.tower"
    sec.write_text("tower sectorial_disk depth=3\n")
    met = tmp_path / "met.tower"
    met.write_text("tower metric_disk depth=3\n")
    code, out, _ = run(["tower", "uniform-cover", str(sec),
                        "--covering", "sectors"])
    assert code == 0 and "uniform=true" in out.splitlines()
    code, out, _ = run(["tower", "uniform-cover", str(met),
                        "--covering", "sectors"])
    assert code == 1 and "witness=puncture b-1,-1" in out.splitlines()


def test_tower_tukey(tmp_path):
    sec = tmp_path / "sec.tower"
    sec.write_text("tower sectorial_disk depth=3\n")
    code, out, _ = run(["tower", "tukey", str(sec), "--covering", "sectors"])
    assert code == 0
    assert "refining_level=2" in out.splitlines()


def test_tower_continuity(tmp_path):
    met = tmp_path / "met.tower"
    met.write_text("tower metric_disk depth=3\n")
    code, out, _ = run(["tower", "continuity", str(met), "--map", "identity"])
    assert code == 0
    code, out, _ = run(["tower", "continuity", str(met),
                        "--map", "cartesian_to_polar"])
    assert code == 1
    assert "FAIL" in out


def test_tower_bornology(tmp_path):
    met = tmp_path / "met.tower"
    met.write_text("tower metric_disk depth=5\n")
    code, out, _ = run(["tower", "bornology", str(met), "--level", "3",
                        "--blocks", "b2,2;b2,3;b3,3"])
    assert code == 0
    assert "Z=b2,2" in out.splitlines()


def test_finite_tower_reads_space_reference(tmp_path, pervin_file):
    import os.path
    t = tmp_path / "fin.tower"
    t.write_text("tower finite depth=1 space=%s\n"
                 % os.path.basename(pervin_file))
    code, out, _ = run(["tower", "build", str(t)])
    assert code == 0


def test_gtop_ucheck(sier_file):
    code, out, _ = run(["gtop", "ucheck", sier_file, "--labels", "p1"])
    assert code == 0
    assert out.strip() == "ucheck=p0+p1"
    code, _, err = run(["gtop", "ucheck", sier_file, "--labels", "p0"])
    assert code == 2


def test_gtop_groth(sier_file):
    code, out, _ = run(["gtop", "groth", sier_file])
    assert code == 0
    assert "grothendieck=true" in out.splitlines()


def test_gtop_cohomology(tmp_path):
    sh = tmp_path / "c.sheaf"
    sh.write_text(formats.print_sheaf("c", constant_sheaf(
        sierpinski_pair().xhat)))
    code, out, _ = run(["gtop", "cohomology", str(sh)])
    assert code == 0
    assert out.splitlines()[0] == "H^0 = 1"


def test_gtop_cech(tmp_path):
    p = tmp_path / "cech.space"
    p.write_text(SIER + "covering C1\nblock p1\nend\n")
    code, out, _ = run(["gtop", "cech", str(p)])
    assert code == 0
    assert "match=true" in out.splitlines()


def test_dmod_subcommands(tmp_path, airy_file):
    code, out, _ = run(["dmod", "polygon", airy_file, "--at", "inf"])
    assert code == 0 and "irregularity=3" in out.splitlines()
    code, out, _ = run(["dmod", "irregularity", airy_file])
    assert code == 0 and out.strip() == "ir[inf]=3"
    code, out, _ = run(["dmod", "chi", airy_file])
    assert code == 0 and out.strip() == "chi=-1"
    code, out, _ = run(["dmod", "delta", airy_file, "--at", "0"])
    assert code == 0 and out.splitlines()[0].startswith("b_0 = ")
    code, out, _ = run(["dmod", "oracle", airy_file, "--dmax", "30"])
    assert code == 0 and "stabilized=true" in out.splitlines()


def test_unknown_flag_is_input_error(airy_file):
    code, _, _ = run(["dmod", "chi", airy_file, "--frobnicate"])
    assert code == 2


def test_missing_file_is_input_error(tmp_path):
    code, _, err = run(["check", str(tmp_path / "nope.space")])
    assert code == 2
    assert "error:" in err


def test_dispatch_covers_documented_surface():
    assert set(DISPATCH) == {
        ("check",), ("convert",), ("derive",), ("pervin",), ("kunzi",),
        ("quotient",),
        ("tower", "build"), ("tower", "threads"), ("tower", "uniform-cover"),
        ("tower", "tukey"), ("tower", "continuity"), ("tower", "bornology"),
        ("gtop", "ucheck"), ("gtop", "l7"), ("gtop", "groth"),
        ("gtop", "cohomology"), ("gtop", "cech"),
        ("dmod", "delta"), ("dmod", "polygon"), ("dmod", "irregularity"),
        ("dmod", "chi"), ("dmod", "oracle"), ("dmod", "report"),
        ("corpus", "run")}
