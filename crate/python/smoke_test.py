"""Smoke test for the pyagdecode extension.

Build first, either with maturin (``maturin develop -m crates/python/Cargo.toml``)
or with ``cargo build --release -p agdecode-python --features extension-module``;
in the latter case the shared library is picked up from ``target/release``.
"""

import importlib.util
import pathlib
import random
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import pyagdecode

        return pyagdecode
    except ImportError:
        pass
    for name in ("libpyagdecode.so", "libpyagdecode.dylib", "pyagdecode.dll"):
        lib = ROOT / "target" / "release" / name
        if lib.exists():
            break
    else:
        sys.exit("pyagdecode is not built; see the module docstring")
    tmp = pathlib.Path(tempfile.mkdtemp()) / "pyagdecode.so"
    shutil.copy(lib, tmp)
    spec = importlib.util.spec_from_file_location("pyagdecode", tmp)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    ag = load()
    rng = random.Random(7)

    klein = ag.Code.from_file(str(ROOT / "curves" / "klein_gf8.toml"), u=20)
    assert (klein.n, klein.k, klein.d_ag, klein.goppa_bound) == (23, 18, 4, 3), klein

    msg = [rng.randrange(8) for _ in range(klein.k)]
    word = klein.encode(msg)
    assert klein.unencode(word) == msg
    received = list(word)
    for i in rng.sample(range(klein.n), 2):
        received[i] ^= rng.randrange(1, 8)
    res = klein.list_decode(received, tau=2)
    assert msg in res.messages(), res.messages()
    assert all(c.distance <= 2 for c in res.candidates)

    one = list(word)
    one[5] ^= 3
    gs = klein.gs_decode(one, tau=1, m=1, ell=2)
    assert gs.messages() == [msg]

    herm = ag.Code.builtin("hermitian_gf4", gamma=[0, 2, 3, 4, 5])
    assert (herm.n, herm.k, herm.d_ag) == (8, 5, 3)
    assert all(nu == lam for _, nu, lam in herm.nu_lambda_table())
    report = herm.simulate(error_weight=1, tau=1, trials=20, seed=3)
    assert "sent_in_list=20/20" in report and "list_sizes 1:20" in report

    print("ok", klein, herm, f"list={len(res)} iterations={res.iterations}")


if __name__ == "__main__":
    main()
