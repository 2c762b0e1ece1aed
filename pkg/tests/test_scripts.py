import json
import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(*argv):
    return subprocess.run([sys.executable, str(SCRIPTS / argv[0]), *argv[1:]], capture_output=True, text=True)


def test_oracle_compare_agrees_on_s3():
    p = run("oracle_compare.py", "--n", "3", "--N", "3", "--gen", "(1,2)", "--gen", "(1,2,3)")
    assert p.returncode == 0
    summary = json.loads(p.stdout.strip().splitlines()[-1])
    assert summary["pairs"] == 36 and summary["disagree"] == 0 and summary["inconclusive"] == 0


def test_oracle_compare_literal_eigen_frame_differs():
    p = run("oracle_compare.py", "--n", "3", "--N", "3", "--gen", "(1,2,3)", "--frame", "eigen")
    assert p.returncode == 1
    assert json.loads(p.stdout.strip().splitlines()[-1])["disagree"] > 0


def test_run_acceptance_single_criterion():
    p = run("run_acceptance.py", "7")
    assert p.returncode == 0
    assert p.stdout.startswith("criterion 7: PASS")
