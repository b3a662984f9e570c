#!/usr/bin/env python3
"""Smoke test for the bchcrt_py extension module.

Builds nothing itself: it locates the cdylib produced by
`cargo build -p bchcrt-py` (debug or release), stages it under an
importable name, and exercises the Python surface end to end.

    cargo build -p bchcrt-py
    python3 python/smoke_test.py
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def stage_module() -> Path:
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libbchcrt_py.so", "bchcrt_py.so", "libbchcrt_py.dylib")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("bchcrt_py cdylib not found; run `cargo build -p bchcrt-py` first")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    stage = Path(tempfile.mkdtemp(prefix="bchcrt-py-"))
    target = stage / "bchcrt_py.so"
    shutil.copy2(newest, target)
    return stage


checks = 0


def check(name: str, cond: bool) -> None:
    global checks
    checks += 1
    if not cond:
        sys.exit(f"FAIL {name}")
    print(f"ok {name}")


def main() -> None:
    sys.path.insert(0, str(stage_module()))
    import bchcrt_py as bc

    # Polynomial helpers.
    check("poly_mul", bc.poly_mul("13", "7") == bc.poly_mul("7", "13"))
    q, r = bc.poly_divmod("537", "13")  # x^4+x+1 divides g exactly
    check("poly_divmod", q == "5d" and r == "0")
    check("poly_mod_inverse", bc.poly_mod_inverse("2", "7") == "3")  # x * (x+1) = 1 mod x^2+x+1
    check("default_prim_poly", bc.default_prim_poly(4) == "13")

    # The [15,5] reference construction.
    code = bc.BchCode(4, 7)
    check("params", (code.t, code.n, code.k, code.delta) == (4, 15, 5, 7))
    check("generator", code.generator() == "537")
    check("generator_terms", code.generator_terms() == "x^10+x^8+x^5+x^4+x^2+x+1")
    check("factors", code.factors() == ["13", "1f", "7"])
    check("cosets", code.cosets() == [[1, 2, 4, 8], [3, 6, 12, 9], [5, 10]])

    d = json.loads(code.descriptor_json())
    check("descriptor", d["N"] == 15 and d["K"] == 5 and d["g"] == "537")

    # Encoding: all backends agree, the result verifies, corruption is
    # caught with the failing root exponent.
    msg = bytes([0x16])
    words = {b: code.encode(msg, backend=b) for b in ("naive", "lfsr_direct", "crt")}
    check("backends_agree", len(set(words.values())) == 1)
    cw = words["crt"]
    check("codeword_len", len(cw) == 2)
    check("verify", code.verify(cw))
    corrupted = bytes([cw[0] ^ 0x01]) + cw[1:]
    check("reject_corruption", not code.verify(corrupted))
    check("failing_root", code.first_failing_root(corrupted) is not None)
    check("zero_message", code.encode(bytes(1)) == bytes(2))

    # CRT remainder against a known value: Rem_g(x^10) = g - x^10.
    check("crt_remainder", code.crt_remainder("400") == "137")

    # Cost ledger headline numbers.
    rep = json.loads(code.cost_report_json())
    check("report_fanout", rep["max_division_fanout"] == 4)
    check("report_direct", rep["direct_division_fanout"] == 6)
    check("report_steps", len(rep["steps"]) == 4)
    check("report_total", rep["total_actual"] <= rep["total_bound"])
    check("report_table", "max division-stage fanout" in code.cost_report_table())

    # A longer code, and the prim-poly override error path.
    long_code = bc.BchCode(11, 23)
    check("long_params", (long_code.n, long_code.k) == (2047, 1926))
    rep = json.loads(long_code.cost_report_json())
    check("long_cost", rep["total_actual"] <= 1595 and rep["max_division_fanout"] <= 11)
    try:
        bc.BchCode(4, 7, prim_poly="x^4+x^3+x^2+x+1")
        sys.exit("FAIL non_primitive_rejected: no exception raised")
    except ValueError as e:
        check("non_primitive_rejected", "order 5" in str(e))

    # Built-in suite.
    results = bc.selftest()
    for name, passed, detail in results:
        check(f"selftest:{name}", passed)

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
