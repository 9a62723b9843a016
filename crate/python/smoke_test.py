"""Build the extension with cargo, import it, and exercise the main calls.

    python3 python/smoke_test.py [--release]
"""

import importlib.util
import json
import pathlib
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build(release):
    cmd = ["cargo", "build", "-p", "dvrtop-py"]
    if release:
        cmd.append("--release")
    subprocess.run(cmd, cwd=ROOT, check=True)
    lib = ROOT / "target" / ("release" if release else "debug") / "libdvrtop.so"
    dest = pathlib.Path(tempfile.mkdtemp()) / ("dvrtop" + sysconfig.get_config_var("EXT_SUFFIX"))
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("dvrtop", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    dv = build("--release" in sys.argv)

    oct_ = dv.Digraph.circulant(6, 2)
    k = oct_.complex()
    assert k.f_vector() == [6, 12, 8], k.f_vector()
    assert k.homology() == [(1, []), (0, []), (1, [])]
    assert k.homology("zp:2") == [(1, []), (0, []), (1, [])]
    assert oct_.minimal_neighborhood(0) == [0, 1, 2, 4, 5]
    assert oct_.interior([0, 1, 2, 3, 4]) == [2]

    s2 = dv.Digraph.digital_sphere()
    assert s2.complex().homology() == k.homology()

    left = dv.Digraph.figure("left")
    assert left.complex().f_vector() == [4, 5, 2]
    assert left.is_simplex([0, 1, 3]) == [0, 1, 3]
    assert not left.is_symmetric()
    right = dv.Digraph.figure("right").complex()
    gens, rels, ab = right.pi1(0)
    assert len(gens) == 1 and rels == [] and ab == (1, [])

    rp2 = dv.Complex.from_facets([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ])
    assert rp2.homology()[1] == (0, [2])
    assert [b for b, _ in rp2.homology("zp:2")] == [1, 1, 1]

    sub = k.full_subcomplex([0, 1, 2])
    exact, nodes = k.les_check(sub, "q")
    assert exact and all(n["exact"] for n in nodes)

    passed, checked, counter = dv.continuity_certificate(left.complex(), left)
    assert passed and counter is None and checked > 0
    samples, failures, _, _ = dv.sampled_continuity_check(k, oct_, samples=500, delta=Fraction(1, 100), seed=1)
    assert (samples, failures) == (500, 0)

    tri = dv.Complex.from_witnessed([[0], [1], [2], [1, 0], [0, 2], [1, 2], [0, 1, 2]])
    half = Fraction(1, 2)
    assert tri.evaluate_fx([0, 1], [half, half]) == 0
    assert tri.evaluate_fx([0, 1, 2], [half, half, Fraction(0)]) == 1

    report, code = dv.run(["homology", "--coeff", "z"], stdin="3\n0 1\n1 2\n")
    assert code == 0
    assert [g["betti"] for g in json.loads(report)["results"]["groups"]] == [1, 0]

    try:
        dv.Digraph(2, [(0, 5)])
    except IndexError:
        pass
    else:
        raise AssertionError("out-of-range edge accepted")

    print("python smoke test passed: dvrtop", dv.__version__)


if __name__ == "__main__":
    main()
