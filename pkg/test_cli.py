"""End-to-end runs of the command line entry point"""
import json
from pathlib import Path

import pytest

from main import build_parser, main

SAMPLES = Path(__file__).parent / "samples"


def sample(name: str) -> str:
    return str(SAMPLES / name)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_grounded_labelling(capsys):
    code, out, _ = run(capsys, "semantics", "--file", sample("six_args.apx"), "--semantics", "grounded")
    assert code == 0
    assert out == "IN: a6\nOUT: a5\nUNDEC: a1 a2 a3 a4\n"


def test_tgf_input_matches_apx(capsys):
    _, from_apx, _ = run(capsys, "semantics", "--file", sample("six_args.apx"), "--semantics", "complete")
    code, from_tgf, _ = run(
        capsys, "semantics", "--file", sample("six_args.tgf"), "--format", "tgf", "--semantics", "complete"
    )
    assert code == 0
    assert from_tgf == from_apx
    assert from_apx.count("\n\n") == 2


def test_no_stable_labelling_is_not_an_error(capsys):
    code, out, _ = run(capsys, "semantics", "--file", sample("three_cycle.apx"), "--semantics", "stable")
    assert code == 0
    assert out == ""


def test_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "semantics", "--file", str(tmp_path / "nope.apx"), "--semantics", "grounded")
    assert code == 2
    assert out == ""
    assert "error: cannot read" in err


def test_malformed_framework(capsys, tmp_path):
    path = tmp_path / "bad.apx"
    path.write_text("arg(a).\natt(a,b).\n")
    code, _, err = run(capsys, "semantics", "--file", str(path), "--semantics", "grounded")
    assert code == 2
    assert "'b'" in err


def test_epistemic_labelling(capsys):
    code, out, _ = run(
        capsys, "epistemic", "--file", sample("six_args.apx"), "--assignment", sample("six_args_p2.txt")
    )
    assert code == 0
    assert out == "IN: a1\nOUT: a2 a5 a6\nUNDEC: a3 a4\nEXTENSION: a1\n"


def test_epistemic_extension_can_be_empty(capsys):
    _, out, _ = run(capsys, "epistemic", "--file", sample("six_args.apx"), "--assignment", sample("six_args_p5.txt"))
    assert out.splitlines()[-1] == "EXTENSION:"
    assert out.splitlines()[0] == "IN:"


def test_epistemic_needs_every_argument(capsys, tmp_path):
    path = tmp_path / "short.txt"
    path.write_text("".join(f"a{i} 0.5\n" for i in range(1, 6)))
    code, _, err = run(capsys, "epistemic", "--file", sample("six_args.apx"), "--assignment", str(path))
    assert code == 3
    assert "a6" in err


def test_assignment_with_unknown_argument(capsys, tmp_path):
    path = tmp_path / "extra.txt"
    path.write_text("zz 0.5\n")
    code, _, _ = run(capsys, "epistemic", "--file", sample("six_args.apx"), "--assignment", str(path))
    assert code == 3


def test_check_reports_failures(capsys):
    code, out, _ = run(capsys, "check", "--file", sample("six_args.apx"), "--assignment", sample("six_args_p3.txt"))
    assert code == 1
    lines = out.splitlines()
    assert lines[:12] == [
        "COH: PASS",
        "SFOU: PASS",
        "FOU: PASS",
        "SOPT: PASS",
        "OPT: PASS",
        "JUS: PASS",
        "TER: FAIL",
        "RAT: PASS",
        "NEU: FAIL",
        "INV: FAIL",
        "MAX: FAIL",
        "MIN: FAIL",
    ]
    assert any(line.startswith("TER: ") and "a1" in line for line in lines[12:])


def test_check_selected_properties(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "--file",
        sample("six_args.apx"),
        "--assignment",
        sample("six_args_p5.txt"),
        "--properties",
        "neu,COH",
    )
    assert code == 0
    assert out == "COH: PASS\nNEU: PASS\n"


def test_check_unknown_property(capsys):
    code, _, _ = run(
        capsys, "check", "--file", sample("six_args.apx"), "--assignment", sample("six_args_p5.txt"), "--properties", "XYZ"
    )
    assert code == 3


def test_complete_three_cycle(capsys):
    code, out, _ = run(
        capsys, "complete", "--file", sample("three_cycle.apx"), "--partial", sample("three_cycle_partial.txt"), "--properties", "COH"
    )
    assert code == 0
    lines = out.splitlines()
    values = dict(line.split() for line in lines[:3])
    assert [float(values[name]) for name in ("a", "b", "c")] == pytest.approx([0.4, 0.5, 0.5], abs=1e-6)
    assert lines[3].startswith("# entropy ")
    assert lines[4] == "# status optimal"
    assert lines[5].startswith("# kkt ")


def test_complete_infeasible(capsys):
    code, out, _ = run(
        capsys, "complete", "--file", sample("chain_attack.apx"), "--partial", sample("chain_attack_partial.txt"), "--properties", "COH"
    )
    assert code == 1
    assert out == "# status infeasible\n# conflict COH b->c\n# conflict pi b=0.7\n# conflict pi c=0.6\n"


def test_complete_rejects_non_convex_property(capsys):
    code, out, _ = run(
        capsys, "complete", "--file", sample("single_attack.apx"), "--partial", sample("single_attack_partial.txt"), "--properties", "RAT"
    )
    assert code == 3
    assert out == ""


def test_json_output(capsys):
    code, out, _ = run(
        capsys, "semantics", "--file", sample("six_args.apx"), "--semantics", "grounded", "--output", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "semantics"
    assert payload["labellings"] == [{"in": ["a6"], "out": ["a5"], "undec": ["a1", "a2", "a3", "a4"]}]
    assert "lines" not in payload


def test_json_completion(capsys):
    _, out, _ = run(
        capsys,
        "complete",
        "--file",
        sample("single_attack.apx"),
        "--partial",
        sample("single_attack_partial.txt"),
        "--properties",
        "INV",
        "--output",
        "json",
    )
    completion = json.loads(out)["completion"]
    assert completion["status"] == "optimal"
    assert completion["assignment"]["a"] == pytest.approx(0.7, abs=1e-6)


def test_usage_errors_exit_with_three(capsys):
    assert main(["semantics", "--file", sample("six_args.apx"), "--semantics", "grounded", "--bogus"]) == 3
    assert main(["semantics", "--file", sample("six_args.apx"), "--semantics", "ideal"]) == 3
    assert main([]) == 3
    assert main(["semantics", "--file", sample("six_args.apx"), "--semantics", "grounded", "--label-band", "0.7"]) == 3


def test_verify_command(capsys):
    argv = ["verify", "--file", sample("single_attack.apx"), "--samples", "200", "--seed", "5"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    rat_line = next(line for line in out.splitlines() if line.startswith("convex RAT:"))
    assert rat_line.startswith("convex RAT: OK expected-non-convex counterexample (0.7, 0.6)")
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_verify_size_cap(capsys, tmp_path):
    path = tmp_path / "big.apx"
    path.write_text("".join(f"arg(a{i}).\n" for i in range(11)))
    code, _, _ = run(capsys, "verify", "--file", str(path), "--samples", "10")
    assert code == 3


def test_parser_lists_every_command():
    parser = build_parser()
    args = parser.parse_args(["verify", "--file", "x.apx"])
    assert args.samples == 10_000 and args.seed == 0 and args.format == "apx"
