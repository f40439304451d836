import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def _run(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, timeout=120)


def test_complexity_table_script():
    done = _run("complexity_table.py")
    assert done.returncode == 0, done.stderr
    lines = done.stdout.splitlines()
    assert lines[0] == "family,params,s_yes,s_no,sr,ss,bounds_ok"
    assert 'appendix,"{""p"": 6, ""q"": 8}",6,8,24,2,true' in lines


def test_verify_all_script_flags_only_the_mirror_defect():
    done = _run("verify_all.py")
    failing = [line.split()[0] for line in done.stdout.splitlines() if " FAIL " in line]
    assert done.returncode == 1 and failing == ["T14"]
