import json
from fractions import Fraction

import numpy as np
import pytest

from fusionkit import SchemaError, modular_matrices, search_invariants
from fusionkit.catalog import cyclic_model, su2_level
from fusionkit.cli import main
from fusionkit.induction import trivial_certificate
from fusionkit import serialize


class TestRingRoundtrip:
    def test_su2_4_bit_identical(self, tmp_path):
        ring, twists = su2_level(4)
        path = tmp_path / "ring.json"
        serialize.write_ring(path, ring, twists)
        first = path.read_bytes()
        ring2, twists2 = serialize.parse_ring(path)
        assert ring2 == ring and twists2 == twists
        serialize.write_ring(path, ring2, twists2)
        assert path.read_bytes() == first

    def test_twist_string_parses_exactly(self):
        assert serialize.parse_rational("3/16", "t") == Fraction(3, 16)
        assert serialize.parse_rational("0", "t") == 0

    def test_not_lowest_terms_rejected(self):
        with pytest.raises(SchemaError):
            serialize.parse_rational("2/4", "t")

    def test_out_of_range_rejected(self):
        with pytest.raises(SchemaError):
            serialize.parse_rational("5/4", "t")
        with pytest.raises(SchemaError):
            serialize.parse_rational("-1/4", "t")

    def test_duplicate_fusion_key_named(self, tmp_path):
        obj = serialize.ring_to_dict(*cyclic_model(2, 1))
        obj["fusion"].append(obj["fusion"][0])
        path = tmp_path / "dup.json"
        path.write_text(serialize.dumps(obj))
        with pytest.raises(SchemaError, match=r"duplicate key \(0, 0, 0\)"):
            serialize.parse_ring(path)

    def test_index_out_of_range(self, tmp_path):
        obj = serialize.ring_to_dict(*cyclic_model(2, 1))
        obj["fusion"][0] = [0, 0, 9, 1]
        path = tmp_path / "bad.json"
        path.write_text(serialize.dumps(obj))
        with pytest.raises(SchemaError):
            serialize.parse_ring(path)

    def test_missing_field(self, tmp_path):
        path = tmp_path / "missing.json"
        path.write_text('{"labels": ["0"]}')
        with pytest.raises(SchemaError, match="missing field"):
            serialize.parse_ring(path)

    def test_catalog_roundtrips(self, catalog, tmp_path):
        for name, (ring, twists) in catalog.items():
            path = tmp_path / f"{name}.json"
            serialize.write_ring(path, ring, twists)
            ring2, twists2 = serialize.parse_ring(path)
            assert ring2 == ring and twists2 == twists, name


class TestInvariantFiles:
    def test_roundtrip(self):
        md = modular_matrices(*su2_level(4))
        mm = search_invariants(md)[1]
        obj = serialize.invariant_to_dict(mm, labels=list(md.ring.labels))
        Z = serialize.z_matrix_from_dict(obj)
        assert np.array_equal(Z, mm.Z)
        assert obj["counts"] == {"trZ": 4, "trZZt": 8}
        assert [0, 0, 1] in obj["entries"]

    def test_csv_export(self):
        Z = np.array([[1, 0], [0, 1]])
        text = serialize.z_matrix_to_csv(Z, ["0", "1"])
        assert text == ",0,1\n0,1,0\n1,0,1\n"


class TestCertificateFiles:
    def test_roundtrip(self, tmp_path):
        cert = trivial_certificate(*su2_level(3), nm_count=4)
        obj = serialize.certificate_to_dict(cert)
        path = tmp_path / "cert.json"
        path.write_text(serialize.dumps(obj))
        back = serialize.certificate_from_dict(serialize.load_json(path))
        assert back.ring == cert.ring
        assert back.mm == cert.mm
        assert np.array_equal(back.aplus, cert.aplus)
        assert back.nm_count == 4

    def test_twists_required(self):
        cert = trivial_certificate(*su2_level(2))
        obj = serialize.certificate_to_dict(cert)
        del obj["nn"]["twists"]
        with pytest.raises(SchemaError, match="twist data is required"):
            serialize.certificate_from_dict(obj)


class TestCLI:
    def test_gen_to_stdout(self, capsys):
        assert main(["gen", "named", "--name", "fibonacci"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["labels"] == ["0", "tau"]
        assert obj["twists"] == ["0", "2/5"]

    def test_gen_check_invariants_flow(self, tmp_path, capsys):
        ring_file = str(tmp_path / "su2_4.json")
        assert main(["gen", "su2", "--level", "4", "-o", ring_file]) == 0
        assert main(["check", ring_file]) == 0
        assert main(["invariants", ring_file]) == 0
        out = capsys.readouterr().out
        assert "2 modular invariant(s)" in out

    def test_check_corrupted_ring_exits_1(self, tmp_path, capsys):
        obj = serialize.ring_to_dict(*su2_level(2))
        obj["fusion"] = [e for e in obj["fusion"] if e[:3] != [1, 1, 2]]
        path = tmp_path / "broken.json"
        path.write_text(serialize.dumps(obj))
        assert main(["check", str(path)]) == 1
        assert "VIOLATED" in capsys.readouterr().out

    def test_unknown_subcommand_exits_2(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_missing_file_exits_2(self, capsys):
        assert main(["check", "/nonexistent/nowhere.json"]) == 2

    def test_gen_without_level_exits_2(self, capsys):
        assert main(["gen", "su2"]) == 2

    def test_modular_print(self, tmp_path, capsys):
        ring_file = str(tmp_path / "m.json")
        main(["gen", "named", "--name", "ising", "-o", ring_file])
        assert main(["modular", ring_file, "--print", "S,c"]) == 0
        out = capsys.readouterr().out
        assert "central charge c = 1/2" in out
        assert "S:" in out

    def test_invariants_json_and_files(self, tmp_path, capsys):
        ring_file = str(tmp_path / "r.json")
        outdir = tmp_path / "invs"
        main(["gen", "su2", "--level", "4", "-o", ring_file])
        assert main(["invariants", ring_file, "--out", str(outdir),
                     "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["count"] == 2
        files = sorted(outdir.glob("invariant_*.json"))
        assert len(files) == 2
        assert json.loads(files[0].read_text())["flags"]["is_identity"]

    def test_invariants_degenerate_exits_1(self, tmp_path, capsys):
        ring_file = str(tmp_path / "deg.json")
        main(["gen", "cyclic", "--order", "2", "-o", ring_file])
        assert main(["invariants", ring_file]) == 1

    def test_classify_flow(self, tmp_path, capsys):
        ring_file = str(tmp_path / "r.json")
        outdir = tmp_path / "invs"
        main(["gen", "su2", "--level", "4", "-o", ring_file])
        main(["invariants", ring_file, "--out", str(outdir)])
        capsys.readouterr()
        zfile = str(outdir / "invariant_001.json")
        assert main(["classify", zfile, ring_file]) == 0
        out = capsys.readouterr().out
        assert "type_one: yes" in out
        assert "trZ=4 trZZt=8" in out

    def test_classify_csv(self, tmp_path, capsys):
        ring_file = str(tmp_path / "r.json")
        outdir = tmp_path / "invs"
        main(["gen", "su2", "--level", "4", "-o", ring_file])
        main(["invariants", ring_file, "--out", str(outdir)])
        capsys.readouterr()
        assert main(["classify", str(outdir / "invariant_000.json"), ring_file,
                     "--format", "csv"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == ",0,1,2,3,4"

    def test_decompose_flow(self, tmp_path, capsys):
        from helpers import symmetric_table
        from fusionkit import BasedAlgebra
        alg = BasedAlgebra.from_group_table(symmetric_table(3))
        path = tmp_path / "s3.json"
        path.write_text(serialize.dumps(serialize.algebra_to_dict(alg)))
        assert main(["decompose", str(path)]) == 0
        assert "blocks: 2 1 1" in capsys.readouterr().out

    def test_verify_induction_flow(self, tmp_path, capsys):
        cert = trivial_certificate(*su2_level(4))
        path = tmp_path / "cert.json"
        path.write_text(serialize.dumps(serialize.certificate_to_dict(cert)))
        assert main(["verify-induction", str(path)]) == 0
        assert "pass generating" in capsys.readouterr().out

    def test_verify_induction_failure_exits_1(self, tmp_path, capsys):
        cert = trivial_certificate(*cyclic_model(2, 0))
        path = tmp_path / "cert.json"
        path.write_text(serialize.dumps(serialize.certificate_to_dict(cert)))
        assert main(["verify-induction", str(path)]) == 1
        assert "FAIL nondegeneracy" in capsys.readouterr().out

    def test_check_twist_invariant_violation_exits_1(self, tmp_path, capsys):
        # cyclic(3,1) parses fine but its twists are not conjugation-symmetric
        ring_file = str(tmp_path / "c31.json")
        main(["gen", "cyclic", "--order", "3", "--q", "1", "-o", ring_file])
        assert main(["check", ring_file]) == 1
        assert "twists: VIOLATED" in capsys.readouterr().out

    def test_fermion_check_mentions_vanishing_z(self, tmp_path, capsys):
        ring_file = str(tmp_path / "f.json")
        main(["gen", "cyclic", "--order", "2", "--q", "2", "-o", ring_file])
        assert main(["check", ring_file]) == 0
        assert "z = 0" in capsys.readouterr().out

    def test_tol_env_override(self, monkeypatch):
        from fusionkit.numerics import default_tolerance
        monkeypatch.setenv("FUSIONKIT_TOL", "1e-6")
        assert default_tolerance() == 1e-6
        monkeypatch.setenv("FUSIONKIT_TOL", "bogus")
        with pytest.raises(ValueError):
            default_tolerance()

    def test_text_output_golden(self, tmp_path, capsys):
        ring_file = str(tmp_path / "s.json")
        main(["gen", "su2", "--level", "1", "-o", ring_file])
        capsys.readouterr()
        assert main(["invariants", ring_file]) == 0
        out = capsys.readouterr().out
        assert out == ("1 modular invariant(s)\n"
                       "[0] trZ=2 trZZt=2 |SZ-ZS|=0.00e+00 "
                       "identity permutation symmetric type_one=yes\n"
                       "    1 0\n"
                       "    0 1\n")


class TestDeterminism:
    def test_jobs_byte_identical(self, tmp_path, capsys):
        ring_file = str(tmp_path / "su2_6.json")
        main(["gen", "su2", "--level", "6", "-o", ring_file])
        capsys.readouterr()
        outputs = []
        for jobs in ("1", "8", "1"):
            assert main(["invariants", ring_file, "--jobs", jobs,
                         "--format", "json"]) == 0
            outputs.append(capsys.readouterr().out.encode())
        assert outputs[0] == outputs[1] == outputs[2]
