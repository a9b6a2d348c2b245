import json
import os
import random
import subprocess
import sys

import jsonschema
import pytest

from zeroleak import generate_valid_mapping, resolve_fixture
from zeroleak.cli import SCHEMA_BY_SUBCOMMAND, load_schema, main
from zeroleak.jsonio import canonical_json_bytes, graph_to_obj, mapping_from_obj, mapping_to_obj
from helpers import brute_mis


def run_main(capsysbinary, *args):
    code = main(list(args))
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err


def run_proc(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    done = subprocess.run(
        [sys.executable, "-m", "zeroleak.cli", *args],
        capture_output=True,
        env=env,
    )
    return done.returncode, done.stdout, done.stderr


def check_schema(subcommand: str, payload: bytes):
    jsonschema.validate(json.loads(payload), load_schema(SCHEMA_BY_SUBCOMMAND[subcommand]))


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_bytes(canonical_json_bytes(obj))
    return str(path)


def test_chif_example_bytes(capsysbinary):
    code, out, err = run_main(capsysbinary, "chif", "--graph", "fixture:c5")
    assert code == 0 and err == b""
    assert out == b'{\n  "bits": 1.321928094887,\n  "chi_f": "5/2"\n}\n'
    check_schema("chif", out)


def test_leakage_eval_example(capsysbinary, tmp_path):
    scheme_path = str(tmp_path / "scheme.json")
    code, _, _ = run_main(capsysbinary, "scheme", "--graph", "fixture:fig1", "--out", scheme_path)
    assert code == 0
    code, out, err = run_main(
        capsysbinary, "leakage-eval", "--graph", "fixture:fig1", "--mapping", scheme_path
    )
    assert code == 0
    assert out == b'{\n  "bits": 1.0,\n  "log2_of": "2/1"\n}\n'
    check_schema("leakage-eval", out)


def test_leakage_eval_rejects_invalid_mapping(capsysbinary, tmp_path):
    bad = write_json(
        tmp_path,
        "bad.json",
        {"t": 1, "codewords": ["all"], "rows": [["1/1"], ["1/1"], ["1/1"], ["1/1"]]},
    )
    code, out, err = run_main(capsysbinary, "leakage-eval", "--graph", "fixture:fig1", "--mapping", bad)
    assert code == 1 and out == b""
    obj = json.loads(err)
    jsonschema.validate(obj, load_schema("error"))
    assert obj["error"]["code"] == "invalid_mapping"
    assert obj["error"]["detail"] == {"codeword": "all", "u": 0, "v": 2}


def test_product_of_k2_pair_is_k4(capsysbinary):
    code, out, _ = run_main(
        capsysbinary, "product", "--op", "or", "--graph", "fixture:k2", "--graph", "fixture:k2"
    )
    assert code == 0
    assert json.loads(out) == {
        "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
        "n": 4,
    }
    check_schema("product", out)


def test_product_and(capsysbinary):
    code, out, _ = run_main(
        capsysbinary, "product", "--op", "and", "--graph", "fixture:k3", "--graph", "fixture:k3"
    )
    assert code == 0
    assert json.loads(out)["n"] == 9
    check_schema("product", out)


def test_info(capsysbinary):
    code, out, _ = run_main(capsysbinary, "info", "--graph", "fixture:petersen")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 10
    assert obj["edge_count"] == 15
    assert obj["alpha"] == 4
    assert obj["mis_count"] == len(brute_mis(resolve_fixture("petersen")))
    assert obj["vertex_transitive"] is True
    assert obj["labels"] is None
    check_schema("info", out)

    code, out, _ = run_main(capsysbinary, "info", "--graph", "fixture:fig1")
    obj = json.loads(out)
    assert obj["labels"] == ["VH", "H", "VL", "L"]
    check_schema("info", out)


def test_info_skips_transitivity_past_cap(capsysbinary, tmp_path):
    ring = write_json(
        tmp_path,
        "ring11.json",
        {"n": 11, "edges": [[i, (i + 1) % 11] for i in range(10)] + [[0, 10]]},
    )
    code, out, _ = run_main(capsysbinary, "info", "--graph", ring)
    assert code == 0
    assert json.loads(out)["vertex_transitive"] is None
    check_schema("info", out)


def test_mis_and_alpha(capsysbinary):
    code, out, _ = run_main(capsysbinary, "mis", "--graph", "fixture:p3")
    assert json.loads(out) == {"alpha": 2, "mis": [[0, 2], [1]]}
    check_schema("mis", out)
    code, out, _ = run_main(capsysbinary, "alpha", "--graph", "fixture:c7")
    assert json.loads(out) == {"alpha": 3}
    check_schema("alpha", out)


def test_leakage_optimal(capsysbinary):
    code, out, _ = run_main(capsysbinary, "leakage-optimal", "--graph", "fixture:c5", "--t", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["t"] == 2
    assert obj["log2_of"] == "25/4"
    assert obj["witness_matches"] is True
    assert obj["witness_log2_of"] == "25/4"
    check_schema("leakage-optimal", out)
    mapping_from_obj(obj["witness"])  # witness is a loadable mapping document


def test_scheme_roundtrip(capsysbinary, tmp_path):
    out_path = str(tmp_path / "petersen_scheme.json")
    code, out, _ = run_main(capsysbinary, "scheme", "--graph", "fixture:petersen", "--out", out_path)
    assert code == 0 and out == b""
    data = open(out_path, "rb").read()
    check_schema("scheme", data)
    m = mapping_from_obj(json.loads(data))
    assert canonical_json_bytes(mapping_to_obj(m)) == data


def test_merge_subcommand(capsysbinary, tmp_path):
    e3 = resolve_fixture("e3")
    m = generate_valid_mapping(e3, 1, 4, random.Random(1), duplicate_codebook=True)
    path = write_json(tmp_path, "dup.json", mapping_to_obj(m))
    y1, y2 = m.codewords
    code, out, _ = run_main(
        capsysbinary, "merge", "--graph", "fixture:e3", "--mapping", path, y1, y2
    )
    assert code == 0
    merged = mapping_from_obj(json.loads(out))
    assert len(merged.codewords) == 1
    check_schema("merge", out)


def test_merge_not_mergeable(capsysbinary, tmp_path):
    k2 = resolve_fixture("k2")
    identity = {"t": 1, "codewords": ["a", "b"], "rows": [["1/1", "0/1"], ["0/1", "1/1"]]}
    path = write_json(tmp_path, "id.json", identity)
    code, out, err = run_main(capsysbinary, "merge", "--graph", "fixture:k2", "--mapping", path, "a", "b")
    assert code == 1
    assert json.loads(err)["error"]["code"] == "not_mergeable"


def test_bounds_multi(capsysbinary):
    code, out, _ = run_main(capsysbinary, "bounds-multi", "--graph", "fixture:c5", "--budget", "exp:2/1")
    assert code == 0
    obj = json.loads(out)
    assert obj["lower"] == "5/2" and obj["upper"] == "5/2"
    assert obj["tight"] is True
    assert obj["lower_bits"] == pytest.approx(1.321928094887)
    assert obj["provenance"]["lower"] == "alphabet_over_independence_ratio"
    check_schema("bounds-multi", out)


def test_bounds_approx(capsysbinary):
    code, out, _ = run_main(
        capsysbinary, "bounds-approx", "--graph", "fixture:fig1", "--theta", "fixture:fig1_theta"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["lower"] == "2/1" and obj["upper"] == "2/1" and obj["tight"] is True
    assert obj["lower_bits"] == 1.0
    check_schema("bounds-approx", out)


def test_bounds_multi_approx_with_table_budget(capsysbinary, tmp_path):
    table = write_json(tmp_path, "table.json", {"values": [1, 1], "growth": "1/1"})
    code, out, _ = run_main(
        capsysbinary,
        "bounds-multi-approx",
        "--graph", "fixture:fig1",
        "--theta", "fixture:fig1_theta",
        "--budget", f"table:{table}",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["tight"] is True
    assert obj["provenance"]["budget"] == "collapses_to_single_approx_guess"
    check_schema("bounds-multi-approx", out)


def test_bounds_inadmissible_budget(capsysbinary):
    code, out, err = run_main(capsysbinary, "bounds-multi", "--graph", "fixture:c5", "--budget", "const:3")
    assert code == 1
    assert json.loads(err)["error"]["code"] == "inadmissible_budget"


def test_empty_graph_error(capsysbinary, tmp_path):
    empty = write_json(tmp_path, "empty.json", {"n": 0, "edges": []})
    code, out, err = run_main(capsysbinary, "chif", "--graph", empty)
    assert code == 1 and out == b""
    obj = json.loads(err)
    assert obj["error"]["code"] == "empty_graph"
    jsonschema.validate(obj, load_schema("error"))


def test_usage_errors(capsysbinary):
    code, _, err = run_main(capsysbinary, "chif")
    assert code == 1
    assert json.loads(err)["error"]["code"] == "usage"
    code, _, err = run_main(capsysbinary, "product", "--op", "or", "--graph", "fixture:k2")
    assert code == 1
    assert json.loads(err)["error"]["code"] == "usage"
    code, _, err = run_main(capsysbinary, "nonsense")
    assert code == 1


def test_unreadable_and_malformed_files(capsysbinary, tmp_path):
    code, _, err = run_main(capsysbinary, "chif", "--graph", str(tmp_path / "missing.json"))
    assert code == 1
    assert json.loads(err)["error"]["code"] == "unreadable_file"
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run_main(capsysbinary, "chif", "--graph", str(broken))
    assert json.loads(err)["error"]["code"] == "bad_json"
    loose = write_json(tmp_path, "loose.json", {"n": 2, "edges": [], "color": "red"})
    code, _, err = run_main(capsysbinary, "chif", "--graph", loose)
    assert json.loads(err)["error"]["code"] == "bad_graph_json"


def test_oracle_default_checks(capsysbinary):
    code, out, _ = run_main(
        capsysbinary,
        "oracle",
        "--graph", "fixture:c5",
        "--theta", "fixture:p3",
        "--trials", "5",
        "--grid", "3",
    )
    assert code == 0
    obj = json.loads(out)
    names = [r["check"] for r in obj["reports"]]
    assert names == ["duality", "multi-guess-floor", "merge-closure", "packing"]
    assert all(r["status"] in ("pass", "estimate") for r in obj["reports"])
    check_schema("oracle", out)


def test_oracle_explicit_check(capsysbinary):
    code, out, _ = run_main(capsysbinary, "oracle", "duality", "--graph", "fixture:k3")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["reports"]) == 1 and obj["reports"][0]["status"] == "pass"
    check_schema("oracle", out)


def test_oracle_usage_errors(capsysbinary):
    code, _, err = run_main(capsysbinary, "oracle", "levitation", "--graph", "fixture:c5")
    assert code == 1
    assert json.loads(err)["error"]["code"] == "usage"
    code, _, err = run_main(capsysbinary, "oracle")
    assert code == 1
    assert json.loads(err)["error"]["code"] == "usage"
    code, _, err = run_main(capsysbinary, "oracle", "packing", "--graph", "fixture:c5")
    assert code == 1
    assert json.loads(err)["error"]["code"] == "usage"


def test_oracle_failure_exit_code(capsysbinary, monkeypatch):
    import zeroleak.cli as cli_module

    def fake_duality(gamma, t):
        return {"check": "duality", "status": "fail", "witness": {"t": t}, "lhs": "2/1", "rhs": "1/1"}

    monkeypatch.setattr(cli_module, "verify_eta_duality", fake_duality)
    code, out, _ = run_main(capsysbinary, "oracle", "duality", "--graph", "fixture:k2")
    assert code == 3
    assert json.loads(out)["reports"][0]["status"] == "fail"
    check_schema("oracle", out)


def test_out_matches_stdout(capsysbinary, tmp_path):
    out_path = str(tmp_path / "result.json")
    code, stdout, _ = run_main(capsysbinary, "chif", "--graph", "fixture:c7")
    code2, empty, _ = run_main(capsysbinary, "chif", "--graph", "fixture:c7", "--out", out_path)
    assert code == code2 == 0 and empty == b""
    assert open(out_path, "rb").read() == stdout


def test_fixture_files_are_canonical():
    from importlib import resources

    for name in ("c5", "petersen", "fig1", "k2"):
        raw = resources.files("zeroleak.fixtures").joinpath(f"{name}.json").read_bytes()
        g = resolve_fixture(name)
        assert canonical_json_bytes(graph_to_obj(g)) == raw


def test_budget_exceeded_exit_code():
    code, out, err = run_proc(
        "mis", "--graph", "fixture:c7", env_extra={"ZEROLEAK_BUDGET": "10"}
    )
    assert code == 2 and out == b""
    obj = json.loads(err)
    assert obj["error"]["code"] == "budget_exceeded"
    assert obj["error"]["detail"]["limit"] == 10


def test_subprocess_runs_are_byte_identical():
    commands = [
        ("chif", "--graph", "fixture:petersen"),
        ("mis", "--graph", "fixture:c5"),
        ("oracle", "--graph", "fixture:c5", "--trials", "3", "--grid", "2"),
    ]
    for cmd in commands:
        first = run_proc(*cmd)
        second = run_proc(*cmd)
        assert first == second
        assert first[0] == 0
