import os
import subprocess
import sys

import pytest
from hypothesis import given

from todacx import BACKEND, _kernel

from conftest import int_matrices

compiled = pytest.mark.skipif(_kernel._compiled is None, reason="compiled kernel not built")


@compiled
@given(int_matrices(max_rows=5, max_cols=5, lo=-20, hi=20))
def test_backends_agree(m):
    rows = m.tolist()
    a = _kernel.python_smith_reduce([r[:] for r in rows], m.rows, m.cols, True)
    b = _kernel.compiled_smith_reduce([r[:] for r in rows], m.rows, m.cols, True)
    assert [list(x) for x in a[0:1]] == [list(x) for x in b[0:1]]
    for x, y in zip(a[1:], b[1:]):
        assert [list(r) for r in x] == [list(r) for r in y]


@compiled
def test_overflow_falls_back():
    big = 2 ** 70
    rows = [[big, 3], [5, big + 1]]
    d = _kernel.smith_reduce([r[:] for r in rows], 2, 2, False)[0]
    assert list(d) == list(_kernel.python_smith_reduce([r[:] for r in rows], 2, 2, False)[0])


def test_pure_backend_env():
    src = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir, "src"))
    env = dict(os.environ, TODACX_PURE="1", PYTHONPATH=os.pathsep.join([src, os.environ.get("PYTHONPATH", "")]))
    out = subprocess.run([sys.executable, "-c", "import todacx; print(todacx.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert BACKEND in ("compiled", "python")
