"""Command-line behaviour: golden text for every verb, exit codes, JSON mode.

Regenerate the golden files with ``NESTSUM_REGEN=1 pytest tests/test_cli.py``
and review the diff before committing.
"""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from nestsum.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "product_stuffle": ["product", "S[1](N)", "S[1](N)"],
    "product_mixed": ["product", "S[-1](N)", "S[2,1](N)"],
    "product_shuffle": ["product", "H[0,1](x)", "H[1](x)"],
    "product_verify": ["product", "S[2](N)", "S[-1,1](N)", "--verify", "5", "--seed", "3"],
    "reduce_h": ["reduce", "H[1,0](x)"],
    "reduce_s": ["reduce", "S[2,1](N) + S[1,2](N)"],
    "lyndon_w3": ["lyndon", "--alphabet", "0,1", "--w", "4"],
    "lyndon_counts": ["lyndon", "--alphabet=-1,0,1", "--counts", "0:2,1:1"],
    "count_hsum": ["count", "hsum_all", "4"],
    "count_nah": ["count", "N_AH", "5"],
    "count_nah_printed": ["count", "N_AH", "5", "--variant", "printed"],
    "count_cyc": ["count", "cyc_S", "3"],
    "dup_h": ["dup", "S[-2,1](N)"],
    "dup_s": ["dup", "S[(2,1),(1,1/2)](N)"],
    "transform_minusx": ["transform", "H[1,0,-1](x)", "--kind", "minusx"],
    "transform_oneminusx": ["transform", "H[1,0,1](x)", "--kind", "oneminusx"],
    "transform_table": ["transform", "--kind", "table", "--table", "1/x"],
    "diffN_1": ["diffN", "S[1](N)"],
    "diffN_2": ["diffN", "S[2,1](N)", "--order", "2"],
    "mellin_form": ["mellin", "S[-2,1,1](N)"],
    "mellin_split": ["mellin", "S[-2,1,1](N)", "--split"],
    "mellin_at": ["mellin", "S[1,1](N)", "--at", "3"],
    "mellin_parity": ["mellin", "S[-1](N)", "--at", "5/2", "--parity", "odd", "--prec", "12"],
    "invmellin_rational": ["invmellin", "1/(N+1)", "--at", "0.3", "--prec", "10"],
    "invmellin_log": ["invmellin", "--at", "1/2", "--prec", "8", "--", "-1/N**2"],
    "eval_word": ["eval", "H[0,1](x)", "--at", "0.5", "--prec", "16"],
    "eval_sum": ["eval", "S[2,1](N) - S[3](N)", "--at", "N=7"],
    "eval_complex": ["eval", "S[1](N)", "--at", "1/2", "--prec", "15"],
    "eval_inf": ["eval", "S[2,1](inf)", "--prec", "15"],
    "mzv_value": ["mzv", "value", "2,1", "--prec", "20"],
    "mzv_count": ["mzv", "count", "--kind", "perrin", "--n", "10"],
    "mzv_check_sum": ["mzv", "check", "--theorem", "sum", "--n", "4", "--k", "2", "--json", "--prec", "12"],
    "json_product": ["product", "S[1](N)", "S[-1](N)", "--json"],
}

ERRORS = [
    (["eval", "S[0](N)", "--at", "2"], 2),
    (["product", "S[1](N"], 2),
    (["nonsense"], 2),
    (["mzv", "value", "1,2"], 3),
    (["eval", "H[0,1](x)", "--at", "0.5", "--prec", "40"], 3),
    (["invmellin", "1", "--at", "0.5"], 4),
    (["mzv", "check", "--theorem", "sum", "--n", "9", "--k", "2"], 3),
]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, _ = run(CASES[name], capsys)
    assert code == 0
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("NESTSUM_REGEN"):
        path.write_text(out)
    assert out == path.read_text()


def test_every_verb_has_golden():
    verbs = {argv[0] for argv in CASES.values()}
    assert verbs == {"product", "reduce", "lyndon", "count", "dup", "transform", "diffN",
                     "mellin", "invmellin", "eval", "mzv"}


@pytest.mark.parametrize("argv,code", ERRORS)
def test_exit_codes(argv, code, capsys):
    got, out, err = run(argv, capsys)
    assert got == code
    assert err.strip()


def test_json_is_parseable(capsys):
    _, out, _ = run(["eval", "H[0,1](x)", "--at", "0.5", "--json"], capsys)
    obj = json.loads(out)
    assert abs(float(obj["value"]) - 0.5822405264650125) < 1e-15


def test_stable_between_runs(capsys):
    a = run(CASES["reduce_s"], capsys)
    b = run(CASES["reduce_s"], capsys)
    assert a == b


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "nestsum.cli", "product", "S[1](N)", "S[1](N)"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.strip() == "2*S[1,1](N) - S[2](N)"
