import io
import json
import subprocess
import sys

import pytest
from hypothesis import given

from concordance import catalog as cat
from concordance.cli import main
from concordance.ratfun import RatFun, eq_mod
from concordance.seifert import KnotEntry

from conftest import seifert_with_curves


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue().rstrip("\n")


class TestCatalog:
    def test_builtin_names(self):
        names = [e.name for e in cat.load_catalog()]
        assert names == ["9_46", "R_1", "R_2", "R_3", "R_4", "ex2_R1R2"]

    def test_shipped_file_is_current(self):
        assert cat.dump_catalog(cat.load_catalog()) == cat.dump_catalog(cat.build_default_catalog())

    def test_notes_preserved(self):
        ex2 = cat.find(cat.load_catalog(), "ex2_R1R2")
        assert "5" in ex2.notes and ex2.notes == cat.find(cat.build_default_catalog(), "ex2_R1R2").notes

    def test_round_trip(self, tmp_path):
        entries = cat.build_default_catalog()
        path = tmp_path / "c.json"
        cat.save_catalog(entries, path)
        again = cat.load_catalog(path)
        assert [e.to_json() for e in again] == [e.to_json() for e in entries]

    @given(seifert_with_curves(k=2))
    def test_round_trip_random(self, vxy):
        V, x, y = vxy
        entry = KnotEntry("k", V, {"x": x, "y": y})
        (back,) = cat.parse_catalog(cat.dump_catalog([entry]))
        assert back.seifert == V and back.curves == {"x": x, "y": y}

    def test_empty(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("[]")
        assert cat.load_catalog(path) == []

    def test_bad_determinant(self):
        text = json.dumps([{"name": "bad", "seifert": [[1, 0], [0, 1]], "curves": {}}])
        with pytest.raises(cat.CatalogError, match="entry 0"):
            cat.parse_catalog(text)

    def test_schema_field_path(self):
        text = json.dumps([{"name": "k", "seifert": [[0, "x"], [-2, 0]], "curves": {}}])
        with pytest.raises(cat.CatalogError, match="field 0/seifert/0/1"):
            cat.parse_catalog(text)
        with pytest.raises(cat.CatalogError, match="field 0"):
            cat.parse_catalog(json.dumps([{"name": "k", "seifert": [], "curves": {}, "extra": 1}]))

    def test_syntax_error_line(self):
        with pytest.raises(cat.CatalogError, match=r"f\.json:3:"):
            cat.parse_catalog('[\n {"name": "k",\n  "seifert": ]\n', "f.json")

    def test_duplicate(self):
        e = {"name": "k", "seifert": [], "curves": {}}
        with pytest.raises(cat.CatalogError, match="duplicate"):
            cat.parse_catalog(json.dumps([e, e]))

    def test_unknown(self):
        with pytest.raises(KeyError):
            cat.find(cat.load_catalog(), "3_1")


class TestCli:
    def test_alex(self):
        assert run("alex", "--knot", "9_46") == (0, "2 - 5t + 2t^2")

    def test_alex_inline(self):
        assert run("alex", "--knot", "[[0,-1],[-2,0]]") == (0, "2 - 5t + 2t^2")

    def test_bl(self):
        assert run("bl", "--knot", "9_46", "--x", "eta", "--y", "eta") == (0, "3(t-1)^2 / (2 - 5t + 2t^2)")

    def test_bl_explicit_curve(self):
        code, text = run("bl", "--knot", "9_46", "--x", "[t + t^-1, 1]", "--y", "[t + t^-1, 1]", "--json")
        code2, text2 = run("bl", "--knot", "9_46", "--x", "gamma2", "--y", "gamma2", "--json")
        assert code == code2 == 0
        v1, v2 = (RatFun.from_json(json.loads(t)["value"]) for t in (text, text2))
        assert eq_mod(v1, v2)

    def test_bl_json(self):
        code, text = run("bl", "--knot", "9_46", "--x", "eta", "--y", "eta", "--json", "--ring", "Z")
        data = json.loads(text)
        assert code == 0 and data["ring"] == "Z"

    def test_verdict(self):
        code, text = run(
            "verdict", "--knot", "9_46", "--eta1", "eta", "--eta2", "2*eta", "--R", "R_2", "--L-alex", "(2-3t)(3-2t)"
        )
        assert code == 0
        assert json.loads(text)["verdict"] == "distinct_by_condition_2"

    def test_coprime(self):
        code, text = run("coprime", "--p", "2 - 5t + 2t^2", "--q", "4 - 17t + 4t^2", "--json")
        assert code == 0 and json.loads(text)["strongly_coprime"]["status"] == "not_strongly_coprime"
        assert json.loads(text)["roots_only_pm"]["witness"]["m"] == 2

    def test_cables(self):
        code, text = run("cables", "--knot", "9_46", "--eta", "eta", "--i-max", "3", "--json")
        assert code == 0 and [r["i"] for r in json.loads(text)] == [1, 2, 3]

    def test_order_isotropic_quadric(self):
        assert run("order", "--knot", "9_46", "--x", "a")[0] == 0
        code, text = run("isotropic", "--knot", "9_46", "--gens", "a")
        assert code == 0 and "true" in text.lower()
        assert run("quadric", "--knot", "9_46", "--json")[0] == 0

    def test_plotdata_deterministic(self, tmp_path):
        a = run("plotdata", "--c", "1,-1", "--denom-bound", "2")
        b = run("plotdata", "--c", "1,-1", "--denom-bound", "2")
        assert a == b and a[0] == 0
        assert a[1].splitlines()[0] == "c,x,y,realizing_curve_json,selflink_num,selflink_den"
        out = tmp_path / "p.csv"
        assert run("plotdata", "--c", "1,-1", "--denom-bound", "2", "--out", str(out))[0] == 0
        assert out.read_text().rstrip("\n") == a[1]

    def test_catalog_commands(self, tmp_path):
        path = tmp_path / "c.json"
        assert run("catalog", "--export", str(path))[0] == 0
        assert run("catalog", "--validate", str(path)) == (0, "ok: 6 entries")
        assert run("--catalog", str(path), "alex", "--knot", "R_2")[0] == 0

    @pytest.mark.parametrize(
        "argv",
        [
            ("alex", "--knot", "3_1"),
            ("bl", "--knot", "9_46", "--x", "zeta", "--y", "eta"),
            ("alex", "--knot", "[[1,0],[0,1]]"),
            ("cables", "--knot", "9_46", "--eta", "a"),
            ("quadric", "--knot", "[]"),
            ("plotdata", "--c", "1/3"),
        ],
    )
    def test_domain_errors_exit_1(self, argv):
        assert run(*argv)[0] == 1

    @pytest.mark.parametrize(
        "argv",
        [
            ("coprime", "--p", "2 - 5t +", "--q", "1"),
            ("bl", "--knot", "9_46", "--x", "[t +, 1]", "--y", "eta"),
            ("alex",),
            ("frobnicate",),
            ("alex", "--knot", "[[0,"),
        ],
    )
    def test_usage_errors_exit_2(self, argv):
        assert run(*argv)[0] == 2

    def test_subprocess_byte_identical(self):
        cmd = [sys.executable, "-m", "concordance", "verdict", "--knot", "9_46", "--eta1", "eta", "--eta2", "2*eta",
               "--R", "R_2", "--L-alex", "(2-3t)(3-2t)", "--json"]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert a == b and json.loads(a)["verdict"] == "distinct_by_condition_2"
