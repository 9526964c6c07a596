import copy
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from forge import cli
from forge import fixtures as fx
from forge import manifest as mf
from forge.tensorspace import Tensor

SL2_DOC = mf.to_doc(fx.fixture_manifest("sl2"))


def run_cli(*argv, env=None):
    import os
    e = dict(os.environ, **(env or {}))
    p = subprocess.run([sys.executable, "-m", "forge.cli", *argv], capture_output=True, text=True, env=e,
                       timeout=600)
    return p.returncode, p.stdout, p.stderr


# -- manifest parsing ---------------------------------------------------------------

@pytest.mark.parametrize("name", fx.FIXTURE_NAMES)
def test_roundtrip_fixtures(name):
    doc = mf.to_doc(fx.fixture_manifest(name))
    assert mf.to_doc(mf.parse(doc)) == doc


@settings(max_examples=50)
@given(st.dictionaries(st.sampled_from([(a, b) for a in "hef" for b in "hef"]),
                       st.fractions(min_value=-5, max_value=5, max_denominator=7), max_size=6))
def test_roundtrip_r_entries(ent):
    m = fx.fixture_manifest("sl2")
    g = m.algebras["sl2"]
    T = Tensor.from_labels(g.space, [(c, a, b) for (a, b), c in ent.items()]) if ent else Tensor.zero(g.space, 2)
    m.r_matrices["r_st"] = ("sl2", T)
    back = mf.parse(json.loads(mf.dumps(mf.to_doc(m))))
    assert back.r_matrices["r_st"][1] == T


def test_rationals_are_strings():
    ent = SL2_DOC["r_matrices"][0]["entries"]
    assert ["h", "h", "1/4"] in ent


def test_bad_rational_names_field():
    doc = copy.deepcopy(SL2_DOC)
    doc["r_matrices"][0]["entries"][0][2] = "1/0"
    with pytest.raises(mf.ManifestError, match=r"r_matrices\[0\]\.entries\[0\]"):
        mf.parse(doc)


def test_unknown_version_and_missing():
    doc = dict(SL2_DOC, version=99)
    with pytest.raises(mf.UnknownVersion):
        mf.parse(doc)
    with pytest.raises(mf.ManifestError, match="version"):
        mf.parse({k: v for k, v in SL2_DOC.items() if k != "version"})


def test_empty_manifest():
    m = mf.parse({"version": mf.VERSION})
    assert m.is_empty()


def test_schema_error_names_path():
    doc = copy.deepcopy(SL2_DOC)
    doc["algebras"][0]["labels"] = "hef"
    with pytest.raises(mf.ManifestError, match="algebras/0/labels"):
        mf.parse(doc)


def test_unknown_label_and_algebra():
    doc = copy.deepcopy(SL2_DOC)
    doc["r_matrices"][0]["entries"][0][0] = "q"
    with pytest.raises(mf.ManifestError, match="unknown basis label 'q'"):
        mf.parse(doc)
    doc = copy.deepcopy(SL2_DOC)
    doc["r_matrices"][0]["algebra"] = "sl9"
    with pytest.raises(mf.ManifestError, match="unknown algebra"):
        mf.parse(doc)


def test_json_syntax_error_has_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"version": 1,\n  "name": }')
    with pytest.raises(mf.ManifestError, match=r"line 2 column"):
        mf.load(p)
    with pytest.raises(mf.ManifestError, match="cannot read"):
        mf.load(tmp_path / "missing.json")


# -- CLI ---------------------------------------------------------------------------

def test_verify_exit_codes(tmp_path):
    code, out, err = run_cli("verify", "sl2", "--profile", "small")
    assert code == 0 and "OK [summary]" in err
    assert all(line.split()[0] in ("PASS", "SKIP") for line in out.splitlines())
    code, out, _ = run_cli("verify", "sl2-corrupted", "--profile", "small")
    assert code == 1 and "Jacobi fails on (h, e, f)" in out
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run_cli("verify", str(bad))[0] == 2
    assert run_cli("verify", "sl2", "--suite", "nonsense")[0] == 2
    assert run_cli("verify", "sl2", "--profile", "huge")[0] == 2


def test_forge_threads():
    assert run_cli("verify", "axb", "--profile", "small", env={"FORGE_THREADS": "2"})[0] == 0
    code, _, err = run_cli("verify", "axb", env={"FORGE_THREADS": "abc"})
    assert code == 2 and "FORGE_THREADS" in err


def test_json_report(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "abelian", "--profile", "small", "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["results"] and all("anchor" in r for r in doc["results"])


def test_build_deterministic():
    a = cli.build("rn", "sl2", 3)
    b = cli.build("rn", "sl2", 3)
    assert mf.dumps(a) == mf.dumps(b)
    assert len(a["labels"]) == 9


def test_build_mixed_bivector_n2():
    doc = cli.build("mixed-bivector", "sl2", 2)
    assert doc["bivector"] == mf.field_doc(fx.flag_bivector(fx.SL2, 2))


@pytest.mark.parametrize("target", cli.BUILD_TARGETS)
def test_build_all_targets(target, tmp_path):
    out = tmp_path / "o.json"
    assert cli.main(["build", target, "--n", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["target"] == target


def test_build_input_errors():
    assert cli.main(["build", "fusion", "--fixture", "gl2"]) == 2
    assert cli.main(["build", "rn", "--n", "0"]) == 2
    assert cli.main(["build", "nope"]) == 2


def test_fixtures_command(capsys):
    assert cli.main(["fixtures", "list"]) == 0
    assert capsys.readouterr().out.split() == list(fx.FIXTURE_NAMES)
    assert cli.main(["fixtures", "axb"]) == 0
    assert json.loads(capsys.readouterr().out)["name"] == "axb"
    assert cli.main(["fixtures", "nope"]) == 2


def test_shipped_manifests_match_fixtures():
    for name in fx.FIXTURE_NAMES:
        doc = json.loads(cli.shipped_manifest(name).read_text())
        assert doc == mf.to_doc(fx.fixture_manifest(name))
