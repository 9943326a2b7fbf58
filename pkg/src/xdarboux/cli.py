"""Batch command-line surface for the Laguerre and exceptional Laguerre families.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, isolate_real_roots, sign_at, squarefree_part
from .darboux import AmbiguousClassification, FactorizationError, classify, factorize
from .laguerre import SeedFamily, SeedSpec, classical_norm, classical_weight, laguerre, laguerre_operator, seed
from .quadrature import ConvergenceError, QuadratureError, certified_inner_product
from .verification import default_ks, verify_classical, verify_exceptional
from .xlaguerre import InvalidFamily, Variant, XFamily, x_norm, x_polynomial, x_weight

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_NONCONVERGED = 3

NORM_TOL = 1e-8
CLASSICAL_NORM_TOL = 1e-10
GRAM_TOL = 1e-8

_K_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(ValueError):
    pass


# -- parsing -------------------------------------------------------------------


def parse_k(text: str) -> Fraction:
    """Exact rational literal "p" or "p/q"; decimals are refused."""
    text = text.strip()
    if not _K_RE.match(text):
        raise UsageError(f"k must be a rational literal p or p/q, got {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise UsageError("k has a zero denominator") from None


def parse_range(text: str) -> tuple[int, int]:
    """"a..b" or a single integer "a"."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"expected an integer range a..b, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be lo:hi:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"grid must be lo:hi:steps, got {text!r}") from None
    if steps < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError("grid requires finite endpoints and steps >= 1")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * j / (steps - 1) for j in range(steps)]


def frac_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def coeff_pairs(p: Polynomial) -> list[list[str]]:
    return [[str(c.numerator), str(c.denominator)] for c in p.coeffs]


def poly_from_pairs(pairs) -> Polynomial:
    return Polynomial(Fraction(int(a), int(b)) for a, b in pairs)


# -- family plumbing -------------------------------------------------------------


class Family:
    """Classical L_n^{(k)} or an exceptional X_m family behind one interface."""

    def __init__(self, variant: str, k: Fraction, m: int):
        self.variant, self.k, self.m = variant, k, m
        if variant == "classical":
            if m != 0:
                raise UsageError("classical family requires m = 0")
            self.x = None
        else:
            self.x = XFamily(Variant(variant), k, m)

    @property
    def nmin(self) -> int:
        return self.m

    def poly(self, n: int) -> Polynomial:
        if n < self.nmin:
            raise UsageError(f"{self.variant} family requires n >= m = {self.m} (got n = {n})")
        return laguerre(n, self.k) if self.x is None else x_polynomial(self.x, n)

    def weight(self):
        if self.x is None:
            if not self.k > -1:
                raise UsageError(f"classical weight requires k > -1 (got k = {self.k})")
            return classical_weight(self.k)
        return x_weight(self.x)

    def norm(self, n: int) -> float:
        return classical_norm(n, self.k) if self.x is None else x_norm(self.x, n)

    def describe(self) -> dict:
        return {"variant": self.variant, "k": frac_str(self.k), "m": self.m}


def _family(args) -> Family:
    return Family(args.variant, parse_k(args.k), args.m_lo)


def _n_values(args, fam: Family) -> list[int]:
    lo, hi = parse_range(args.n) if args.n else (fam.nmin, fam.nmin + 5)
    if lo < fam.nmin:
        raise UsageError(f"{fam.variant} family requires n >= m = {fam.m} (got n = {lo})")
    return list(range(lo, hi + 1))


# -- output ----------------------------------------------------------------------


def write_output(text: str, path: str | None) -> None:
    """Write to ``path`` atomically (temp file + rename), or to stdout."""
    if not path:
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".xdarboux-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- commands --------------------------------------------------------------------


def cmd_table(args) -> int:
    fam = _family(args)
    ns = _n_values(args, fam)
    polys = [(n, fam.poly(n)) for n in ns]
    if args.format == "csv":
        rows = [(n, j, str(c.numerator), str(c.denominator)) for n, p in polys for j, c in enumerate(p.coeffs)]
        write_output(_csv_text(["n", "power", "num", "den"], rows), args.out)
    else:
        doc = {"family": fam.describe(), "polynomials": [{"n": n, "coeffs": coeff_pairs(p)} for n, p in polys]}
        write_output(_json_text(doc), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    fam = _family(args)
    ns = _n_values(args, fam)
    xs = parse_grid(args.grid or "0:10:11")
    polys = [fam.poly(n) for n in ns]
    rows = [[x] + [p.eval_float(x) for p in polys] for x in xs]
    if args.format == "json":
        doc = {
            "family": fam.describe(),
            "n": ns,
            "rows": [["%.17g" % v for v in row] for row in rows],
        }
        write_output(_json_text(doc), args.out)
    else:
        header = ["x"] + [f"P_{n}(x)" for n in ns]
        write_output(_csv_text(header, [["%.17g" % v for v in row] for row in rows]), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    nmax = parse_range(args.n)[1] if args.n else 8
    if args.variant == "classical":
        ks = [parse_k(args.k)] if args.k else default_ks("classical", 0)
        report = verify_classical(ks, nmax, inject_fault=args.inject_fault)
    else:
        variant = Variant(args.variant)
        ms = list(range(args.m_lo, args.m_hi + 1))
        ks = [parse_k(args.k)] if args.k else default_ks(args.variant, args.m_hi)
        for m in ms:
            for k in ks:
                XFamily(variant, k, m)
        offset = max(nmax - args.m_hi, 1)
        report = verify_exceptional(variant, ks, ms, offset, inject_fault=args.inject_fault)
    doc = report.as_dict()
    write_output(_json_text(doc), args.out)
    if not report.ok:
        first = doc["first_failure"]
        print(f"FAIL {first['identity']} {first['params']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def norm_rows(fam: Family, ns: Sequence[int], gram: bool = False) -> tuple[list[dict], bool]:
    """Closed-form vs certified quadrature norms; the flag is True when all rows pass."""
    tol = CLASSICAL_NORM_TOL if fam.x is None else NORM_TOL
    weight = fam.weight()
    polys = {n: fam.poly(n) for n in ns}
    rows, ok = [], True
    diag: dict[int, float] = {}
    for n in ns:
        exact = fam.norm(n)
        cv = certified_inner_product(polys[n], polys[n], weight, tol=min(tol, 1e-9) / 10)
        rel = abs(cv.value - exact) / abs(exact)
        diag[n] = cv.value
        passed = rel <= tol
        ok = ok and passed
        rows.append(
            {
                "n": n, "closed_form": exact, "quadrature": cv.value, "rel_error": rel,
                "nodes": cv.nodes, "certificate": cv.rel_change, "pass": passed,
            }
        )
    if gram:
        for i, a in enumerate(ns):
            for b in ns[i + 1:]:
                scale = math.sqrt(diag[a] * diag[b])
                cv = certified_inner_product(polys[a], polys[b], weight, tol=1e-10, scale=scale)
                ratio = abs(cv.value) / scale
                passed = ratio <= GRAM_TOL
                ok = ok and passed
                rows.append(
                    {
                        "n": f"{a},{b}", "closed_form": 0.0, "quadrature": cv.value, "rel_error": ratio,
                        "nodes": cv.nodes, "certificate": cv.rel_change, "pass": passed,
                    }
                )
    return rows, ok


def cmd_norms(args) -> int:
    fam = _family(args)
    ns = _n_values(args, fam)
    rows, ok = norm_rows(fam, ns, args.gram)
    if args.format == "csv":
        cols = ["n", "closed_form", "quadrature", "rel_error", "nodes", "certificate", "pass"]
        body = [[_cell(r[c]) for c in cols] for r in rows]
        write_output(_csv_text(cols, body), args.out)
    else:
        write_output(_json_text({"family": fam.describe(), "rows": rows}), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _cell(v) -> str:
    return "%.17g" % v if isinstance(v, float) else str(v)


def factorization_report(k: Fraction, family: int, m: int) -> dict:
    phi, lam = seed(SeedSpec(SeedFamily(family), k, m))
    f = factorize(laguerre_operator(k), phi, None, lam)
    try:
        kind = classify(f, Polynomial.constant(1)).value
    except AmbiguousClassification:
        kind = "Ambiguous"
    return {
        "operator": f"L_{k}",
        "seed": f"phi{family}",
        "m": m,
        "phi": str(f.phi),
        "w": str(f.w),
        "b": str(f.b),
        "bhat": str(f.bhat),
        "what": str(f.what),
        "lambda0": frac_str(f.lambda0),
        "That": [str(c) for c in f.That.coeffs],
        "phihat": str(f.phihat),
        "classification": kind,
    }


def cmd_factorize(args) -> int:
    if args.variant != "classical":
        raise UsageError("factorize acts on the classical operator; use --variant classical")
    k = parse_k(args.k)
    try:
        doc = factorization_report(k, args.seed, args.m_lo)
    except FactorizationError as exc:
        print(f"factorization failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "csv":
        write_output(_csv_text(["field", "value"], [(key, json.dumps(v) if isinstance(v, list) else v)
                                                     for key, v in doc.items()]), args.out)
    else:
        write_output(_json_text(doc), args.out)
    return EXIT_OK


def zero_certificates(p: Polynomial) -> list[dict]:
    """Isolating intervals with exact sign-change evidence from the square-free part."""
    sq = squarefree_part(p)
    out = []
    for lo, hi in isolate_real_roots(p):
        if lo == hi:
            cert = {"exact_root": p(lo) == 0}
        else:
            cert = {"sign_lo": sign_at(sq, lo), "sign_hi": sign_at(sq, hi)}
        out.append(
            {
                "interval": [frac_str(lo), frac_str(hi)],
                "approx": float((lo + hi) / 2),
                "certificate": cert,
            }
        )
    return out


def cmd_zeros(args) -> int:
    fam = _family(args)
    ns = _n_values(args, fam)
    entries = [{"n": n, "zeros": zero_certificates(fam.poly(n))} for n in ns]
    if args.format == "csv":
        rows = [(e["n"], z["interval"][0], z["interval"][1], "%.17g" % z["approx"]) for e in entries for z in e["zeros"]]
        write_output(_csv_text(["n", "lo", "hi", "approx"], rows), args.out)
    else:
        write_output(_json_text({"family": fam.describe(), "zeros": entries}), args.out)
    return EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "norms": cmd_norms,
    "factorize": cmd_factorize,
    "zeros": cmd_zeros,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="xdarboux", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--variant", choices=["classical", "type1", "type2"], default="classical")
    ap.add_argument("--k", help="rational parameter p or p/q")
    ap.add_argument("--m", default="0", help="codimension (verify also accepts a..b)")
    ap.add_argument("--n", help="degree range a..b")
    ap.add_argument("--grid", help="evaluation grid lo:hi:steps")
    ap.add_argument("--format", choices=["json", "csv"])
    ap.add_argument("--gram", action="store_true", help="also report off-diagonal inner products")
    ap.add_argument("--seed", type=int, choices=[1, 2, 3, 4], default=1, help="seed family for factorize")
    ap.add_argument("--inject-fault", action="store_true", help="flip a sign inside the verify suite")
    ap.add_argument("--out", help="output path (default stdout)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.m_lo, args.m_hi = parse_range(args.m)
        if args.m_lo != args.m_hi and args.command != "verify":
            raise UsageError("a range of m values is accepted by verify only")
        if args.k is None and args.command != "verify":
            raise UsageError(f"{args.command} requires --k")
        if args.format is None:
            args.format = "csv" if args.command == "eval" else "json"
        return COMMANDS[args.command](args)
    except InvalidFamily as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        print(json.dumps(exc.certificate), file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (UsageError, QuadratureError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
