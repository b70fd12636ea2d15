"""Command-line surface.

Four commands: `seq` generates and audits one sequence, `spectrum`
builds matrices and emits their spectra, `ensemble` sweeps moment
statistics across sizes, `verify` runs the exhaustive desk-scale
verification suites.  `from-manifest` replays any previous run.

Every run writes a manifest recording the resolved configuration and
library version; identical configurations produce byte-identical
output files (CSV/JSON/SVG), whatever the thread count.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from . import __version__
from .errors import DomainError, PrsmError, ShiftAddViolation, VerificationError
from .gf2 import (
    Gf2Poly,
    parse_poly,
    primitive_polynomials,
    self_reciprocal_primitives,
    smallest_primitive,
)
from . import sequences as seqmod
from .sequences import MSeq, berlekamp_massey, msequence
from . import ensembles as ens
from .ensembles import EnsembleSpec
from . import eigen
from . import laws
from . import codes
from .svgplot import write_density_svg

_FAMILY_BY_FLAG = {
    "pseudo": "pseudo",
    "squared-pseudo": "squared_pseudo",
    "one-sided": "one_sided",
    "wigner": "wigner",
    "random-circulant": "random_circulant",
    "paley": "paley",
    "tridiag": "tridiag_hermite",
}

_CHECK_NAMES = (
    "balance",
    "runs",
    "autocorrelation",
    "shift-add",
    "window",
    "serial",
    "complexity",
)


# ---------------------------------------------------------------- output


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_jsonable(obj), fh, sort_keys=True, indent=2)
        fh.write("\n")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def _write_manifest(out: str, command: str, cfg: dict) -> None:
    _write_json(
        os.path.join(out, "manifest.json"),
        {"version": __version__, "command": command, "config": cfg},
    )


def _out_dir(arg: Optional[str]) -> str:
    out = arg or os.environ.get("PRSM_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return out


# ---------------------------------------------------------------- parsing


def _parse_seed(text: str, m: int) -> tuple[int, ...]:
    if text == "ones":
        return (1,) * m
    if not text or any(ch not in "01" for ch in text):
        raise DomainError(f"seed must be a bit string or 'ones', got {text!r}")
    if len(text) != m:
        raise DomainError(f"seed length {len(text)} != generator degree {m}")
    return tuple(int(ch) for ch in text)


def _parse_range(text: str) -> list[int]:
    # "9..12" -> [9, 10, 11, 12]; "7" -> [7]
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise DomainError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _parse_doubling(text: str) -> list[int]:
    # "256..1024" -> [256, 512, 1024]; single value -> [value]
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        sizes = []
        while lo <= hi:
            sizes.append(lo)
            lo *= 2
        if not sizes:
            raise DomainError(f"empty range {text!r}")
        return sizes
    return [int(text)]


def _parse_orders(text: str) -> list[int]:
    orders = [int(tok) for tok in text.split(",") if tok]
    if not orders:
        raise DomainError("at least one moment order required")
    return orders


def _resolve_poly(poly: Optional[str], m: Optional[int]) -> str:
    if poly and m:
        raise DomainError("give either --poly or --m, not both")
    if poly:
        return str(parse_poly(poly))
    if m:
        return str(smallest_primitive(m))
    raise DomainError("one of --poly or --m is required")


def _pick_shifts(n: int, shifts: str, rng_seed: int) -> list[int]:
    if shifts == "all":
        return list(range(n))
    k = int(shifts)
    if not 1 <= k <= n:
        raise DomainError(f"--shifts must be in 1..{n} or 'all'")
    if k == n:
        return list(range(n))
    rng = np.random.default_rng(rng_seed)
    return sorted(int(a) for a in rng.choice(n, size=k, replace=False))


# ---------------------------------------------------------------- seq


def _run_seq(cfg: dict, out: str, fmt: str) -> int:
    f = parse_poly(cfg["poly"])
    seed = _parse_seed(cfg["seed"], f.degree)
    s = msequence(f, seed)
    checks = cfg["checks"]

    results: dict[str, dict] = {}
    if "balance" in checks:
        value = seqmod.axiom_balance(s)
        results["balance"] = {"value": value, "passed": value == -1}
    if "runs" in checks:
        rr = seqmod.axiom_runs(s)
        results["runs"] = {
            "blocks": {str(k): v for k, v in sorted(rr.blocks.items())},
            "gaps": {str(k): v for k, v in sorted(rr.gaps.items())},
            "total": rr.total,
            "passed": rr.passed,
        }
    if "autocorrelation" in checks:
        off_peak = sorted({seqmod.autocorrelation(s, a) for a in range(1, s.n)})
        results["autocorrelation"] = {
            "peak": seqmod.autocorrelation(s, 0),
            "off_peak_values": off_peak,
            "passed": off_peak == [-1] and seqmod.autocorrelation(s, 0) == s.n,
        }
    if "shift-add" in checks:
        table = seqmod.shift_and_add_table(s)
        bijective = sorted(table.values()) == list(range(1, s.n))
        results["shift-add"] = {"bijective": bijective, "passed": bijective}
    if "window" in checks:
        ok = seqmod.window_check(s)
        results["window"] = {"passed": ok}
    if "serial" in checks:
        table = {str(k): seqmod.serial_test(s, k) for k in range(1, s.m + 1)}
        results["serial"] = {
            "max_count_spread": table,
            "passed": all(v <= 1 for v in table.values()),
        }
    if "complexity" in checks:
        bm = berlekamp_massey(list(s.bits) * 2)
        results["complexity"] = {
            "linear_complexity": bm.complexity,
            "recovered_generator": str(bm.feedback),
            "confident": bm.confident,
            "description_length": seqmod.description_length(s),
            "passed": bm.complexity == s.m and bm.feedback == f,
        }

    all_passed = all(r["passed"] for r in results.values())
    report = {
        "poly": str(f),
        "m": s.m,
        "n": s.n,
        "seed": list(seed),
        "description_length": seqmod.description_length(s),
        "results": results,
        "all_passed": all_passed,
    }
    with open(os.path.join(out, "sequence.txt"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(seqmod.to_line(s) + "\n")
    _write_json(os.path.join(out, "checks.json"), report)
    print(f"{f} seed={cfg['seed']} n={s.n}")
    for name in _CHECK_NAMES:
        if name in results:
            print(f"  {name}: {'pass' if results[name]['passed'] else 'FAIL'}")
    return 0 if all_passed else 1


# ---------------------------------------------------------------- spectrum


def _member_specs(cfg: dict) -> tuple[list[EnsembleSpec], MSeq | None]:
    family = cfg["family"]
    if family in ("pseudo", "squared_pseudo", "one_sided"):
        f = parse_poly(cfg["poly"])
        seed = _parse_seed(cfg["seed"], f.degree)
        s = msequence(f, seed)
        shifts = _pick_shifts(s.n, cfg["shifts"], cfg["rng"])
        signs = (1,) if cfg["signs"] == "plus" else (1, -1)
        if family == "one_sided":
            specs = [
                EnsembleSpec(family=family, poly=str(f), seed=seed, shift=a)
                for a in shifts
            ]
        else:
            specs = [
                EnsembleSpec(family=family, poly=str(f), seed=seed, shift=a, sign=sign)
                for sign in signs
                for a in shifts
            ]
        return specs, s
    if family == "paley":
        return [EnsembleSpec(family=family, q=cfg["q"], scale=cfg["scale"])], None
    if family in ("wigner", "random_circulant", "tridiag_hermite"):
        specs = [
            EnsembleSpec(
                family=family,
                n=cfg["n"],
                rng_seed=cfg["rng"],
                member=k,
                variant=cfg.get("variant"),
            )
            for k in range(cfg["samples"])
        ]
        return specs, None
    raise DomainError(f"unknown family {family!r}")


def _auto_law(family: str) -> Optional[laws.RefLaw]:
    if family == "squared_pseudo":
        return laws.mp_law(1.0)
    if family == "paley":
        return None
    return laws.semicircle_law()


def _resolve_law(cfg: dict) -> Optional[laws.RefLaw]:
    choice = cfg["law"]
    if choice == "auto":
        return _auto_law(cfg["family"])
    if choice == "none":
        return None
    if choice == "semicircle":
        return laws.semicircle_law()
    if choice == "mp":
        return laws.mp_law(cfg["gamma"])
    raise DomainError(f"unknown law {choice!r}")


def _cluster_count(values: np.ndarray) -> int:
    v = np.sort(values)
    spread = float(v[-1] - v[0])
    if spread == 0.0:
        return 1
    gaps = np.diff(v)
    return int(np.sum(gaps > max(1e-6 * spread, 1e-9))) + 1


def _run_spectrum(cfg: dict, out: str, fmt: str) -> int:
    specs, _ = _member_specs(cfg)
    law = _resolve_law(cfg)
    spectra = [laws.spectrum_of(spec, solver=cfg["solver"]) for spec in specs]
    pooled = np.sort(np.concatenate([sp.values for sp in spectra]))
    n = spectra[0].n

    orders = list(range(1, 9))
    per = np.array(
        [[laws.empirical_moment(sp.values, r) for r in orders] for sp in spectra]
    )
    mean = [math.fsum(per[:, j].tolist()) / len(spectra) for j in range(len(orders))]
    std = per.std(axis=0, ddof=1) if len(spectra) > 1 else np.zeros(len(orders))

    moments = []
    for j, r in enumerate(orders):
        entry = {"r": r, "mean": mean[j], "std": float(std[j])}
        if law is not None:
            ref = laws.law_moment(law, r)
            entry["reference"] = ref
            entry["delta"] = mean[j] - ref
        moments.append(entry)

    ks: dict[str, float] = {}
    if law is not None:
        key = law.kind if law.kind != "marchenko_pastur" else f"mp_{law.gamma:g}"
        ks[key] = laws.ks_distance(pooled, law)
    sigma_fit = math.sqrt(laws.empirical_moment(pooled, 2))
    if sigma_fit > 0:
        ks["gaussian_fit"] = laws.ks_distance(pooled, laws.gaussian_law(sigma_fit))

    summary = {
        "family": cfg["family"],
        "members": len(specs),
        "n": n,
        "pooled_count": len(pooled),
        "solver": spectra[0].provenance,
        "ks": ks,
        "fitted_sigma": sigma_fit,
        "moments": moments,
    }
    if law is not None:
        summary["divergent_support"] = laws.support_divergence(pooled, law)
    if cfg["family"] == "paley":
        summary["clusters"] = _cluster_count(pooled)

    hist = laws.make_histogram(pooled, cfg["bins"])
    _write_csv(
        os.path.join(out, "spectrum.csv"),
        ["eigenvalue"],
        ([v] for v in pooled),
    )
    _write_csv(
        os.path.join(out, "histogram.csv"),
        ["bin_lo", "bin_hi", "count", "density"],
        (
            [hist.bin_edges[i], hist.bin_edges[i + 1], int(hist.counts[i]), hist.density[i]]
            for i in range(len(hist.counts))
        ),
    )
    _write_json(os.path.join(out, "summary.json"), summary)
    if fmt == "svg":
        write_density_svg(
            os.path.join(out, "density.svg"),
            hist,
            law=law,
            title=f"{cfg['family']} n={n} members={len(specs)}",
        )
    print(f"{cfg['family']}: {len(specs)} member(s), n={n}")
    for key, val in sorted(ks.items()):
        print(f"  ks[{key}] = {val:.6f}")
    if "clusters" in summary:
        print(f"  clusters = {summary['clusters']}")
    if summary.get("divergent_support"):
        print("  divergent support: spectrum escapes the reference law")
    return 0


# ---------------------------------------------------------------- ensemble


def _run_ensemble(cfg: dict, out: str, fmt: str) -> int:
    family = cfg["family"]
    law = laws.semicircle_law()
    orders = cfg["orders"]
    rows = []
    sizes: list[int] = []
    stds: dict[int, list[float]] = {r: [] for r in orders}

    if family == "pseudo":
        for m in cfg["m_list"]:
            f = smallest_primitive(m) if cfg.get("poly") is None else parse_poly(cfg["poly"])
            s = msequence(f, _parse_seed(cfg["seed"], f.degree))
            shifts = _pick_shifts(s.n, cfg["shifts"], cfg["rng"])
            signs = (1, -1) if cfg["signs"] == "both" else (1,)
            specs = [
                EnsembleSpec(family="pseudo", poly=str(f), seed=s.seed, shift=a, sign=sign)
                for sign in signs
                for a in shifts
            ]
            rep = laws.ensemble_stats(specs, orders, law=law, solver=cfg["solver"])
            sizes.append(s.n)
            for j, r in enumerate(orders):
                rows.append(
                    [m, s.n, r, rep.mean[j], rep.std[j], rep.reference[j], rep.delta[j]]
                )
                stds[r].append(float(rep.std[j]))
    elif family == "wigner":
        for n in cfg["n_list"]:
            specs = [
                EnsembleSpec(family="wigner", n=n, rng_seed=cfg["rng"], member=k)
                for k in range(cfg["samples"])
            ]
            rep = laws.ensemble_stats(specs, orders, law=law, solver=cfg["solver"])
            sizes.append(n)
            m_equiv = int(math.log2(n + 1)) if (n + 1) & n == 0 else 0
            for j, r in enumerate(orders):
                rows.append(
                    [m_equiv, n, r, rep.mean[j], rep.std[j], rep.reference[j], rep.delta[j]]
                )
                stds[r].append(float(rep.std[j]))
    else:
        raise DomainError(f"ensemble sweeps support pseudo and wigner, not {family!r}")

    _write_csv(
        os.path.join(out, "moments.csv"),
        ["m", "n", "r", "mean", "std", "reference", "delta"],
        rows,
    )
    slopes = {}
    if len(sizes) >= 2:
        for r in orders:
            if all(v > 0 for v in stds[r]):
                slopes[str(r)] = laws.loglog_slope(sizes, stds[r])
    _write_json(
        os.path.join(out, "summary.json"),
        {"family": family, "sizes": sizes, "orders": orders, "std_slopes": slopes},
    )
    print(f"{family}: sizes {sizes}")
    for r, slope in sorted(slopes.items()):
        print(f"  std(moment_{r}) ~ n^{slope:.3f}")
    return 0


# ---------------------------------------------------------------- verify


def _verify_axioms(cfg: dict, lines: list[str]) -> tuple[int, int, Optional[dict]]:
    rng = np.random.default_rng(cfg["rng"])
    checked = failed = 0
    first = None
    for m in cfg["m_list"]:
        for f in primitive_polynomials(m):
            for _ in range(cfg["seeds"]):
                seed = tuple(int(b) for b in rng.integers(0, 2, size=m))
                if not any(seed):
                    seed = (1,) + seed[1:]
                s = msequence(f, seed)
                bm = berlekamp_massey(list(s.bits) * 2)
                ok = (
                    seqmod.axiom_balance(s) == -1
                    and seqmod.axiom_runs(s).passed
                    and all(seqmod.autocorrelation(s, a) == -1 for a in range(1, s.n))
                    and seqmod.window_check(s)
                    and all(seqmod.serial_test(s, k) <= 1 for k in range(1, m + 1))
                    and sorted(seqmod.shift_and_add_table(s).values()) == list(range(1, s.n))
                    and bm.complexity == m
                    and seqmod.description_length(s) == 2 * m - 1
                )
                checked += 1
                if not ok:
                    failed += 1
                    if first is None:
                        first = {"poly": str(f), "seed": list(seed)}
        lines.append(f"axioms m={m}: all primitive generators x {cfg['seeds']} seeds")
    return checked, failed, first


def _verify_codes(cfg: dict, lines: list[str]) -> tuple[int, int, Optional[dict]]:
    checked = failed = 0
    first = None

    def run(label: str, fn) -> None:
        nonlocal checked, failed, first
        checked += 1
        try:
            fn()
            lines.append(f"codes {label}: pass")
        except PrsmError as exc:
            failed += 1
            lines.append(f"codes {label}: FAIL {exc}")
            if first is None:
                first = {"check": label, "detail": str(exc)}

    for m in [m for m in cfg["m_list"] if 3 <= m <= 5]:
        f = smallest_primitive(m)
        s = msequence(f, (1,) * m)
        sx = codes.simplex_code(s)

        def duality(f=f, sx=sx):
            basis = codes.hamming_basis(f)
            bad = [
                (a, b)
                for a in sx.words
                for b in basis
                if codes._dot_parity(a, b) != 0
            ]
            if bad:
                raise VerificationError(f"{len(bad)} non-orthogonal pairs")

        run(f"m={m} simplex+duality", duality)

        def palindromic(f=f, s=s, m=m):
            dim = codes.palindromic_dimension(f)
            expected = (s.n + 1) // 2 - m
            if dim != expected:
                raise VerificationError(f"palindromic dimension {dim} != {expected}")

        run(f"m={m} palindromic dimension = {(s.n + 1) // 2 - m}", palindromic)
        if m <= 4:
            run(
                f"m={m} palindromic subcode",
                lambda f=f: codes.palindromic_subcode(codes.hamming_code(f)),
            )
            for r in (2, 4):
                def sweep(s=s, r=r):
                    rep = codes.verify_tuple_identities(s, r)
                    if not rep.passed:
                        raise VerificationError(json.dumps(rep.first_counterexample))
                run(f"m={m} tuple identities r={r}", sweep)

    def self_reciprocal():
        found = {str(p) for p in self_reciprocal_primitives(12)}
        if found != {"x+1", "x^2+x+1"}:
            raise VerificationError(f"unexpected self-reciprocal set {sorted(found)}")

    run("self-reciprocal primitives degree<=12", self_reciprocal)
    return checked, failed, first


def _verify_solvers(cfg: dict, lines: list[str]) -> tuple[int, int, Optional[dict]]:
    checked = failed = 0
    first = None
    tol = 1e-8

    def compare(label: str, values: list[np.ndarray]) -> None:
        nonlocal checked, failed, first
        checked += 1
        worst = max(
            float(np.max(np.abs(values[0] - other))) for other in values[1:]
        )
        if worst > tol:
            failed += 1
            lines.append(f"solvers {label}: FAIL disagreement {worst:.3e}")
            if first is None:
                first = {"check": label, "disagreement": worst}

    for m in (3, 4, 5):
        s = msequence(smallest_primitive(m), (1,) * m)
        for a in range(s.n):
            A = ens.build_pseudo(s, a, 1)
            compare(
                f"pseudo m={m} a={a}",
                [
                    eigen.circulant_eigenvalues(A).values,
                    eigen.circulant_eigenvalues(A, backend="fft").values,
                    eigen.dense_sym_eigenvalues(A).values,
                    eigen.jacobi_eigenvalues(A).values,
                ],
            )
        lines.append(f"solvers pseudo m={m}: {s.n} shifts x 4 routes")

    count = cfg["samples"]
    n = cfg["n"]
    if n % 2 == 0:
        raise DomainError("random circulant cross-check needs odd n")
    for k in range(count):
        C = ens.sample_random_circulant(n, ens.member_rng(cfg["rng"], k))
        routes = [
            eigen.circulant_eigenvalues(C).values,
            eigen.dense_sym_eigenvalues(C).values,
        ]
        if n <= eigen.JACOBI_MAX_N and k % 10 == 0:
            routes.append(eigen.jacobi_eigenvalues(C).values)
        compare(f"circulant n={n} member={k}", routes)
    lines.append(f"solvers random circulants: {count} members at n={n}")
    return checked, failed, first


def _verify_spectra_full(cfg: dict, lines: list[str]) -> tuple[int, int, Optional[dict]]:
    # full-scale single-matrix runs; only behind --full
    checked = failed = 0
    first = None
    law = laws.semicircle_law()
    prev = None
    for m in (12, 13, 14):
        s = msequence(smallest_primitive(m), (1,) * m)
        sp = eigen.circulant_eigenvalues(ens.build_pseudo(s, 0, 1))
        d = laws.ks_distance(sp.values, law)
        checked += 1
        ok = prev is None or d < prev
        lines.append(f"spectra m={m}: ks={d:.5f}{'' if ok else ' (not decreasing)'}")
        if not ok:
            failed += 1
            if first is None:
                first = {"check": f"ks decrease at m={m}", "ks": d, "previous": prev}
        prev = d
    return checked, failed, first


def _run_verify(cfg: dict, out: str, fmt: str) -> int:
    suites = ("axioms", "codes", "solvers") if cfg["suite"] == "all" else (cfg["suite"],)
    lines: list[str] = []
    total = {"checked": 0, "failed": 0}
    report: dict = {"suites": {}}
    runner = {
        "axioms": _verify_axioms,
        "codes": _verify_codes,
        "solvers": _verify_solvers,
    }
    for suite in suites:
        checked, failed, first = runner[suite](cfg, lines)
        report["suites"][suite] = {
            "checked": checked,
            "failed": failed,
            "first_counterexample": first,
        }
        total["checked"] += checked
        total["failed"] += failed
    if cfg["full"]:
        checked, failed, first = _verify_spectra_full(cfg, lines)
        report["suites"]["spectra_full"] = {
            "checked": checked,
            "failed": failed,
            "first_counterexample": first,
        }
        total["checked"] += checked
        total["failed"] += failed

    report["checked"] = total["checked"]
    report["failed"] = total["failed"]
    report["passed"] = total["failed"] == 0
    _write_json(os.path.join(out, "verify.json"), report)
    for line in lines:
        print(line)
    print(f"verify: {total['checked']} checks, {total['failed']} failures")
    if total["failed"]:
        bad = {
            suite: info["first_counterexample"]
            for suite, info in report["suites"].items()
            if info["failed"]
        }
        print(json.dumps(_jsonable(bad), sort_keys=True), file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- plumbing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output directory (default $PRSM_OUT or .)")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--threads", type=int, help="cap numba parallelism")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prsm",
        description="pseudo-random sign matrices: sequences, spectra, verification",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="generate one sequence and audit it")
    p.add_argument("--poly", required=True)
    p.add_argument("--seed", default="ones")
    p.add_argument("--checks", default="all")
    _add_common(p)

    p = sub.add_parser("spectrum", help="build matrices and emit spectra")
    p.add_argument("--family", required=True, choices=sorted(_FAMILY_BY_FLAG))
    p.add_argument("--poly")
    p.add_argument("--m", type=int)
    p.add_argument("--seed", default="ones")
    p.add_argument("--shifts", default="all")
    p.add_argument("--signs", choices=("plus", "both"), default="plus")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--rng", type=int, default=0)
    p.add_argument("--solver", choices=("auto", "cosine", "fft", "dense", "jacobi"), default="auto")
    p.add_argument("--variant", choices=ens.TRIDIAG_VARIANTS, default="standard")
    p.add_argument("--scale", type=float, default=1.0, help="paley entry scale")
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--law", choices=("auto", "semicircle", "mp", "none"), default="auto")
    p.add_argument("--gamma", type=float, default=1.0)
    _add_common(p)

    p = sub.add_parser("ensemble", help="moment statistics across sizes")
    p.add_argument("--family", choices=("pseudo", "wigner"), required=True)
    p.add_argument("--m", help="degree or range lo..hi (pseudo)")
    p.add_argument("--n", help="size or doubling range lo..hi (wigner)")
    p.add_argument("--poly")
    p.add_argument("--seed", default="ones")
    p.add_argument("--orders", default="2,4")
    p.add_argument("--shifts", default="100")
    p.add_argument("--signs", choices=("plus", "both"), default="both")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--rng", type=int, default=0)
    p.add_argument("--solver", choices=("auto", "cosine", "fft", "dense", "jacobi"), default="auto")
    _add_common(p)

    p = sub.add_parser("verify", help="exhaustive desk-scale verification")
    p.add_argument("--suite", choices=("axioms", "codes", "solvers", "all"), default="all")
    p.add_argument("--m", default=None, help="degree or range lo..hi")
    p.add_argument("--n", type=int, default=257, help="random-circulant size (solvers)")
    p.add_argument("--seeds", type=int, default=5, help="seeds per generator (axioms)")
    p.add_argument("--samples", type=int, default=100, help="random circulants (solvers)")
    p.add_argument("--rng", type=int, default=0)
    p.add_argument("--full", action="store_true", help="include full-scale spectra checks")
    _add_common(p)

    p = sub.add_parser("from-manifest", help="replay a recorded run")
    p.add_argument("manifest")
    _add_common(p)

    return parser


def _resolve(args: argparse.Namespace) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "seq":
        checks = (
            list(_CHECK_NAMES)
            if args.checks == "all"
            else [c for c in args.checks.split(",") if c]
        )
        unknown = set(checks) - set(_CHECK_NAMES)
        if unknown:
            raise DomainError(f"unknown checks: {sorted(unknown)}")
        return cmd, {
            "poly": str(parse_poly(args.poly)),
            "seed": args.seed,
            "checks": checks,
        }
    if cmd == "spectrum":
        family = _FAMILY_BY_FLAG[args.family]
        cfg = {
            "family": family,
            "solver": args.solver,
            "bins": args.bins,
            "law": args.law,
            "gamma": args.gamma,
            "rng": args.rng,
        }
        if family in ("pseudo", "squared_pseudo", "one_sided"):
            cfg["poly"] = _resolve_poly(args.poly, args.m)
            cfg["seed"] = args.seed
            cfg["shifts"] = args.shifts
            cfg["signs"] = args.signs
        elif family == "paley":
            if not args.q:
                raise DomainError("--q is required for the paley family")
            cfg["q"] = args.q
            cfg["scale"] = args.scale
        else:
            if not args.n:
                raise DomainError(f"--n is required for the {args.family} family")
            cfg["n"] = args.n
            cfg["samples"] = args.samples
            if family == "tridiag_hermite":
                cfg["variant"] = args.variant
        return cmd, cfg
    if cmd == "ensemble":
        cfg = {
            "family": args.family,
            "orders": _parse_orders(args.orders),
            "rng": args.rng,
            "solver": args.solver,
        }
        if args.family == "pseudo":
            if not args.m:
                raise DomainError("--m (degree or range) is required for pseudo")
            cfg["m_list"] = _parse_range(args.m)
            cfg["poly"] = str(parse_poly(args.poly)) if args.poly else None
            cfg["seed"] = args.seed
            cfg["shifts"] = args.shifts
            cfg["signs"] = args.signs
        else:
            if not args.n:
                raise DomainError("--n (size or range) is required for wigner")
            cfg["n_list"] = _parse_doubling(args.n)
            cfg["samples"] = args.samples
        return cmd, cfg
    if cmd == "verify":
        suite = args.suite
        default_m = {"axioms": "2..10", "codes": "3..5", "solvers": "3..5", "all": "2..10"}
        m_list = _parse_range(args.m if args.m else default_m[suite])
        if suite in ("codes", "all"):
            pass  # codes suite filters to 3..5 internally
        return cmd, {
            "suite": suite,
            "m_list": m_list,
            "n": args.n,
            "seeds": args.seeds,
            "samples": args.samples,
            "rng": args.rng,
            "full": bool(args.full),
        }
    raise DomainError(f"unknown command {cmd!r}")


_RUNNERS = {
    "seq": _run_seq,
    "spectrum": _run_spectrum,
    "ensemble": _run_ensemble,
    "verify": _run_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", None):
        import numba

        if args.threads < 1:
            print("error: --threads must be >= 1", file=sys.stderr)
            return 2
        # a cap, not a demand: never exceed what the machine offers
        numba.set_num_threads(min(args.threads, numba.config.NUMBA_NUM_THREADS))
    try:
        if args.command == "from-manifest":
            with open(args.manifest, encoding="utf-8") as fh:
                recorded = json.load(fh)
            if recorded.get("version") != __version__:
                print(
                    f"warning: manifest version {recorded.get('version')} != {__version__}",
                    file=sys.stderr,
                )
            command, cfg = recorded["command"], recorded["config"]
            out = _out_dir(args.out or os.path.dirname(os.path.abspath(args.manifest)))
        else:
            command, cfg = _resolve(args)
            out = _out_dir(args.out)
        _write_manifest(out, command, cfg)
        return _RUNNERS[command](cfg, out, args.format)
    except (VerificationError, ShiftAddViolation) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except PrsmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
