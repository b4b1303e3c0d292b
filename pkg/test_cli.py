#!/usr/bin/env python3

import sys
import os
sys.path.insert(0, os.path.dirname(__file__))

import configparser
import json
from argparse import Namespace

import pandas as pd
import pytest

from cli import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    build_scan_config,
    check_config,
    main,
    parse_args,
    write_records,
)
from utils import parse_psi


def read_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def make_config(text):
    config = configparser.ConfigParser()
    config.read_string(text)
    return config


def test_s6_table(capsys):
    assert main(["s6", "--table"]) == EXIT_OK
    rows = read_lines(capsys.readouterr().out)
    assert len(rows) == 11
    assert {r["cycle_type"] for r in rows if r["euler_class"] == "FORBIDDEN"} == {"[3,3]", "[6]"}


def test_s6_sigma_and_generators(capsys):
    assert main(["s6", "--sigma", "(123)(45)", "--generators", "(12345),(1243)"]) == EXIT_OK
    sigma, subgroup = read_lines(capsys.readouterr().out)
    assert sigma["euler_class"] == "T3_T4"
    assert sigma["order"] == 6
    assert subgroup["tag"] == "F20"


def test_curve_checks(capsys):
    assert main(["curve", "--f11-checks"]) == EXIT_OK
    report, = read_lines(capsys.readouterr().out)
    assert (report["C_count"], report["D10_count"]) == (12, 8)


def test_classify(capsys):
    assert main(["classify", "--psi", "0,2"]) == EXIT_OK
    tags = [r["tag"] for r in read_lines(capsys.readouterr().out)]
    assert tags == ["F20", "S5"]


def test_classify_plot(tmp_path, capsys):
    path = tmp_path / "types.png"
    assert main(["classify", "--psi", "0", "--plot", str(path)]) == EXIT_OK
    assert path.read_bytes().startswith(b"\x89PNG")


def test_count_both_methods(capsys):
    assert main(["count", "--q", "7", "--psi", "2", "--variety", "U", "--method", "both"]) == EXIT_OK
    record, = read_lines(capsys.readouterr().out)
    assert record["count"] == record["naive_count"]
    assert record["q"] == 7


def test_count_shards(capsys):
    assert main(["count", "--q", "7", "--psi", "2", "--shards", "2", "--workers", "2"]) == EXIT_OK
    record, = read_lines(capsys.readouterr().out)
    assert record["sharded_count"] == record["count"]


def test_count_rejects_non_prime_power():
    assert main(["count", "--q", "6"]) == EXIT_USAGE


def test_reciprocity_csv(tmp_path):
    out = tmp_path / "rows.csv"
    code = main(["reciprocity", "--psi", "2", "--prime-max", "7", "--depth", "2",
                 "--format", "csv", "--output", str(out)])
    assert code == EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame["p"]) == [3, 7]
    assert frame["ok"].all()


def test_identity_mutation_must_fail(capsys):
    assert main(["identity", "--kind", "WEBER_D10", "--trials", "3", "--mutate"]) == EXIT_OK
    report, = read_lines(capsys.readouterr().out)
    assert not report["ok"]


def test_identity_rejects_bad_prime():
    assert main(["identity", "--prime", "1000000007"]) == EXIT_USAGE


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as e:
        main(["count"])
    assert e.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main(["reciprocity", "--depth", "3"])
    assert e.value.code == EXIT_USAGE


def test_missing_config_file(tmp_path):
    assert main(["s6", "--config", str(tmp_path / "missing.ini")]) == EXIT_USAGE


def test_bad_config_values(tmp_path):
    path = tmp_path / "config.ini"
    path.write_text("[scan]\nmethod = bogus\ndepth = 3\n[dioph]\nprime = 1000000007\n")
    assert main(["s6", "--config", str(path)]) == EXIT_USAGE
    problems = check_config(make_config(path.read_text()))
    assert len(problems) == 3


def test_flags_override_config():
    config = make_config("[scan]\nprime_max = 7\npsi = 0,3\n[dioph]\ntrials = 10\n")
    args = parse_args(["reciprocity", "--prime-max", "11"])
    scan = build_scan_config(args, config)
    assert scan.prime_max == 11
    assert scan.psi == [parse_psi(0), parse_psi(3)]
    assert scan.trials == 10
    scan = build_scan_config(Namespace(), make_config(""))
    assert scan.prime_max == 13
    assert scan.method == "accelerated"


def test_write_records_csv(tmp_path):
    out = tmp_path / "out.csv"
    write_records([{"p": 3, "nested": {"a": 1}}, {"p": 7, "nested": {"a": 2}}], "csv", str(out))
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["p", "nested.a"]
    assert list(frame["nested.a"]) == [1, 2]


def test_failed_check_exits_two(monkeypatch):
    import cli

    def failing(args, scan):
        raise ArithmeticError("broken")

    monkeypatch.setitem(cli.COMMANDS, "s6", failing)
    assert main(["s6"]) == EXIT_FAILED


def test_euler_both_methods(capsys):
    assert main(["euler", "--q", "3", "--psi", "2", "--method", "both"]) == EXIT_OK
    record, = read_lines(capsys.readouterr().out)
    assert record["q"] == 3
    assert record["class"] != "FORBIDDEN"


def test_euler_method_mismatch_exits_two(monkeypatch):
    import weil

    def skewed(psi, q, method, budget):
        return weil.WeilQuartic(q, 1 if method == "naive" else -1, 0)

    monkeypatch.setattr(weil, "reconstruct_mirror_quartic", skewed)
    assert main(["euler", "--q", "3", "--psi", "2", "--method", "both"]) == EXIT_FAILED
