import json
from fractions import Fraction
from pathlib import Path

import pytest

from ordered_coloring import InputError
from ordered_coloring.cli import main
from ordered_coloring.io import (
    parse_instance,
    parse_nae,
    parse_provenance,
    serialize_instance,
    serialize_nae,
    serialize_provenance,
)
from ordered_coloring.rand import make_rng, random_instance, random_nae
from conftest import instance


SAMPLE = """# demo file
ograph demo
vtx a 1
vtx b 5/2
vtx c -3
edg a b
edg c a
lst a 12
lst b 0
"""


class TestOrderedGraphFormat:
    def test_parse_sample(self):
        name, inst = parse_instance(SAMPLE)
        assert name == "demo"
        g = inst.graph
        assert g.vertices == ("c", "a", "b")
        assert g.position("b") == Fraction(5, 2)
        assert inst.lists.get("a") == {1, 2}
        assert inst.lists.get("b") == frozenset()
        assert inst.lists.get("c") == {1, 2, 3}

    def test_round_trip(self):
        rng = make_rng(201)
        for _ in range(40):
            inst = random_instance(rng, rng.randint(0, 9), rng.random(), rng.random())
            text = serialize_instance("rt", inst)
            name, back = parse_instance(text)
            assert name == "rt" and back == inst
            assert serialize_instance("rt", back) == text

    @pytest.mark.parametrize(
        "bad,fragment",
        [
            ("vtx a 1\nvtx a 2", "duplicate vertex"),
            ("vtx a 1\nvtx b 1", "position"),
            ("vtx a 1\nedg a b", "unknown vertex"),
            ("vtx a 1\nvtx b 2\nedg a b\nedg b a", "duplicate edge"),
            ("vtx a 1\nedg a a", "self-loop"),
            ("vtx a 1\nlst a 14", "bad list digits"),
            ("vtx a 1\nlst a 11", "bad list digits"),
            ("vtx a 1.5", "bad position"),
            ("vtx a 1/0", "bad position"),
            ("blah a b", "unknown record"),
        ],
    )
    def test_strict_errors_carry_line_numbers(self, bad, fragment):
        with pytest.raises(InputError) as err:
            parse_instance(bad)
        assert fragment in str(err.value)
        assert "line" in str(err.value)


class TestNaeFormat:
    def test_round_trip(self):
        rng = make_rng(202)
        for _ in range(25):
            inst = random_nae(rng, rng.randint(3, 8), rng.randint(0, 6))
            assert parse_nae(serialize_nae(inst)) == inst

    def test_header_required(self):
        with pytest.raises(InputError):
            parse_nae("cls 1 2 3")

    def test_invalid_clause(self):
        with pytest.raises(InputError):
            parse_nae("nae 2\ncls 1 2 3")


class TestProvenanceFormat:
    def test_round_trip(self):
        roles = {"x": "x", "m1": "m_1", "t1_2": "t_{1,2}"}
        meta = {"gadget": ("h1",), "free": ("J3", "neg:J11")}
        text = serialize_provenance(roles, meta)
        back_roles, back_meta = parse_provenance(text)
        assert back_roles == roles
        assert back_meta == meta
        assert serialize_provenance(back_roles, back_meta) == text


def run_cli(tmp_path, *argv):
    import io as _io
    import contextlib

    buf = _io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


@pytest.fixture
def k4_file(tmp_path):
    inst = instance(
        {chr(97 + i): i + 1 for i in range(4)},
        [(chr(97 + a), chr(97 + b)) for a in range(4) for b in range(a + 1, 4)],
    )
    path = tmp_path / "k4.og"
    path.write_text(serialize_instance("k4", inst), encoding="utf-8")
    return str(path)


class TestCli:
    def test_oracle_on_k4(self, tmp_path, k4_file):
        code, out = run_cli(tmp_path, "solve", k4_file, "--alg", "oracle")
        assert code == 1 and "verdict not-colorable" in out

    def test_jw_matches_oracle_exit(self, tmp_path, k4_file):
        code, out = run_cli(tmp_path, "solve", k4_file, "--alg", "jw", "--w", "1")
        assert code == 1

    def test_j16_solver(self, tmp_path, k4_file):
        code, out = run_cli(tmp_path, "solve", k4_file, "--alg", "j16", "--k", "0", "--l", "0")
        assert code == 1

    def test_witness_printed_and_valid(self, tmp_path):
        path = tmp_path / "p.og"
        path.write_text("ograph p\nvtx a 1\nvtx b 2\nedg a b\nlst a 1\n", encoding="utf-8")
        code, out = run_cli(tmp_path, "solve", str(path), "--alg", "oracle")
        assert code == 0 and "witness a=1" in out

    def test_refusal_exit_code(self, tmp_path):
        path = tmp_path / "jw1.og"
        path.write_text(
            "ograph jw1\n" + "".join(f"vtx v{i} {i}\n" for i in range(1, 6)) + "edg v2 v4\n",
            encoding="utf-8",
        )
        code, out = run_cli(tmp_path, "solve", str(path), "--alg", "jw", "--w", "1")
        assert code == 2 and "verdict refused" in out and "pattern-witness" in out

    def test_input_error_exit_code(self, tmp_path):
        path = tmp_path / "bad.og"
        path.write_text("vtx a 1\nvtx a 2\n", encoding="utf-8")
        code, out = run_cli(tmp_path, "solve", str(path), "--alg", "oracle")
        assert code == 3 and "verdict input-error" in out

    def test_check_free_by_id_and_by_file(self, tmp_path, k4_file):
        code, _ = run_cli(tmp_path, "check-free", "J16", k4_file)
        assert code == 0
        code, out = run_cli(tmp_path, "check-free", k4_file, k4_file)
        assert code == 1 and "embedding" in out

    def test_classify(self, tmp_path):
        path = tmp_path / "m5.og"
        path.write_text(
            "ograph m5\n" + "".join(f"vtx v{i} {i}\n" for i in range(1, 6)) + "edg v1 v5\nedg v2 v3\n",
            encoding="utf-8",
        )
        code, out = run_cli(tmp_path, "classify", str(path))
        assert code == 0 and "status np-complete" in out

    def test_classify_open_family(self, tmp_path):
        path = tmp_path / "m8pad.og"
        path.write_text(
            "ograph m8pad\n"
            + "".join(f"vtx v{i} {i}\n" for i in range(1, 7))
            + "edg v2 v6\nedg v3 v5\n",
            encoding="utf-8",
        )
        code, out = run_cli(tmp_path, "classify", str(path))
        assert code == 0 and "status open" in out

    def test_gen_verify_pipeline(self, tmp_path):
        nae_path = tmp_path / "i.nae"
        nae_path.write_text("nae 3\ncls 1 2 3\n", encoding="utf-8")
        prefix = str(tmp_path / "h1t2")
        code, _ = run_cli(tmp_path, "gen", str(nae_path), "--gadget", "h1", "--order", "t2", "--out", prefix)
        assert code == 0
        code, out = run_cli(
            tmp_path, "verify", prefix + ".og", "--prov", prefix + ".prov", "--source", str(nae_path)
        )
        assert code == 0 and "verdict verified" in out

    def test_gen_verify_expander_with_registry(self, tmp_path):
        src = tmp_path / "src.og"
        src.write_text(
            "ograph src\nvtx a 1\nvtx b 2\nvtx c 3\nedg a b\nedg b c\n", encoding="utf-8"
        )
        prefix = str(tmp_path / "h5")
        code, _ = run_cli(tmp_path, "gen", str(src), "--gadget", "h5", "--out", prefix)
        assert code == 0
        code, out = run_cli(
            tmp_path, "verify", prefix + ".og", "--prov", prefix + ".prov", "--source", str(src)
        )
        assert code == 0 and "check:path-registry pass" in out

    def test_verify_detects_corruption(self, tmp_path):
        nae_path = tmp_path / "i.nae"
        nae_path.write_text("nae 3\ncls 1 2 3\n", encoding="utf-8")
        prefix = str(tmp_path / "h1t1")
        run_cli(tmp_path, "gen", str(nae_path), "--gadget", "h1", "--order", "t1", "--out", prefix)
        og = Path(prefix + ".og")
        og.write_text(og.read_text(encoding="utf-8") + "edg m1 t1_2\n", encoding="utf-8")
        code, out = run_cli(tmp_path, "verify", prefix + ".og", "--prov", prefix + ".prov")
        assert code == 1 and "fail" in out

    def test_gen_bip_rejects_odd_cycle(self, tmp_path):
        src = tmp_path / "tri.og"
        src.write_text(
            "ograph tri\nvtx a 1\nvtx b 2\nvtx c 3\nedg a b\nedg b c\nedg a c\n",
            encoding="utf-8",
        )
        code, out = run_cli(tmp_path, "gen", str(src), "--gadget", "bip")
        assert code == 3 and "not bipartite" in out

    def test_json_mirror(self, tmp_path, k4_file):
        code, out = run_cli(tmp_path, "--json", "solve", k4_file, "--alg", "oracle")
        last = out.strip().splitlines()[-1]
        payload = json.loads(last)
        assert payload["verdict"] == "not-colorable"

    def test_random_instance_reproducible(self, tmp_path):
        code1, out1 = run_cli(tmp_path, "random-instance", "--seed", "7", "--n", "6")
        code2, out2 = run_cli(tmp_path, "random-instance", "--seed", "7", "--n", "6")
        assert code1 == code2 == 0 and out1 == out2
        code3, out3 = run_cli(tmp_path, "random-instance", "--seed", "8", "--n", "6")
        assert out3 != out1

    def test_two_list_algorithm(self, tmp_path):
        path = tmp_path / "two.og"
        path.write_text(
            "ograph two\nvtx a 1\nvtx b 2\nedg a b\nlst a 12\nlst b 12\n",
            encoding="utf-8",
        )
        code, out = run_cli(tmp_path, "solve", str(path), "--alg", "2sat")
        assert code == 0 and "witness" in out

    def test_serialization_is_byte_stable(self):
        text = (
            "ograph g\n"
            "vtx c -3\n"
            "vtx a 1\n"
            "vtx b 5/2\n"
            "edg c a\n"
            "edg a b\n"
            "lst a 12\n"
            "lst b 0\n"
        )
        name, inst = parse_instance(text)
        assert serialize_instance(name, inst) == text

    def test_gen_is_deterministic(self, tmp_path):
        src = tmp_path / "src.og"
        src.write_text("ograph s\nvtx a 1\nvtx b 2\nedg a b\n", encoding="utf-8")
        outputs = []
        for run in (1, 2):
            prefix = str(tmp_path / f"run{run}")
            run_cli(tmp_path, "gen", str(src), "--gadget", "h3", "--order", "t5", "--out", prefix)
            outputs.append(
                (Path(prefix + ".og").read_bytes(), Path(prefix + ".prov").read_bytes())
            )
        assert outputs[0] == outputs[1]

    def test_backend_flag(self, tmp_path):
        path = tmp_path / "p.og"
        path.write_text(
            "ograph p\nvtx a 1\nvtx b 2\nvtx c 3\nedg a b\nedg b c\n", encoding="utf-8"
        )
        for backend in ("link-reduction", "link-enum"):
            code, _ = run_cli(tmp_path, "solve", str(path), "--alg", "jw", "--backend", backend)
            assert code == 0
