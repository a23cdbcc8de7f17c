import json
import os
import subprocess
import sys


def _run(code, **env):
    full = dict(os.environ, **env)
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                          env=full, check=True).stdout


def test_env_forces_pure_python():
    out = _run("import icverify; print(icverify.BACKEND)", ICVERIFY_PURE_PYTHON="1")
    assert out.strip() == "python"


def test_pure_python_suite_matches_default():
    code = ("import sys; from icverify import cli; "
            "sys.exit(cli.main(['check', '--n-max', '4', '--uniform', '17', '--randoms', '8']))")
    pure = _run(code, ICVERIFY_PURE_PYTHON="1")
    default = _run(code, ICVERIFY_PURE_PYTHON="0")
    assert json.loads(pure)["passed"]
    # exact checks are backend independent; only the float scan margins may differ in ulps
    strip = lambda doc: [(c["name"], c["passed"], c["points_checked"]) for c in json.loads(doc)["checks"]]
    assert strip(pure) == strip(default)


def test_precision_env_var():
    out = _run("from icverify.intervals import DEFAULT_PRECISION; print(DEFAULT_PRECISION)",
               ICVERIFY_PRECISION="128")
    assert out.strip() == "128"
