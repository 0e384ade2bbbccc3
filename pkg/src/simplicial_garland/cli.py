"""Command line interface: ``analyze``, ``verify``, ``homology``, ``spectrum``, ``generate``.

Exit codes: 0 when every checked inequality/identity holds, 1 on a
violation, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fileio
from .complex import ComplexError, SimplicialComplex
from .garland import garland_lower_bounds, garland_upper_bounds, upper_bounds_hold
from .generators import MODELS, corpus, generate
from .interlace import (
    garland_local_system,
    random_local_system,
    verify_cauchy,
    verify_interlacing,
    verify_prop_lower,
    verify_prop_upper,
    verify_sign1,
    verify_sign2,
    verify_sign_union,
    verify_weyl,
)
from .laplacian import FLAVORS, WeightFunction, constant_weight, laplacian, pure_cofacet_weight
from .spectral import eigenvalues_symmetric, homology_dimension, numeric_kernel_dim

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
PROPS = ("lplus", "lminus", "sign", "interlace", "cauchy", "weyl")


class ConfigError(ValueError):
    pass


def fmt(x: float) -> float:
    """Round to 12 significant digits so reports are byte-stable."""
    x = float(x)
    if x == 0:
        return 0.0
    return float(f"{x:.12g}")


@dataclass
class RunConfig:
    k: int | None = None
    l: int | None = None
    weights: str = "unit"
    tol: float | None = None
    exact: bool = False
    seed: int = 0
    seeds: int = 20
    props: tuple[str, ...] = PROPS
    output: Path | None = None

    def __post_init__(self):
        if self.tol is not None and self.tol < 0:
            raise ConfigError("tolerance must be non-negative")
        if self.k is not None and self.l is not None and not 0 <= self.l < self.k:
            raise ConfigError(f"need 0 <= l < k, got k={self.k}, l={self.l}")

    def pairs(self, X: SimplicialComplex) -> list[tuple[int, int]]:
        dim = X.dim
        ks = [self.k] if self.k is not None else range(1, dim + 1)
        out = []
        for k in ks:
            if k > dim or k < 1:
                raise ConfigError(f"k={k} out of range for a complex of dimension {dim}")
            ls = [self.l] if self.l is not None else range(k)
            out.extend((k, l) for l in ls if 0 <= l < k)
        return out


def resolve_weights(X: SimplicialComplex, spec: str) -> tuple[WeightFunction, str]:
    if spec == "unit":
        return constant_weight(X), "unit"
    if spec == "pure":
        if not X.is_pure(X.dim):
            raise ConfigError("pure weights need a pure complex")
        return pure_cofacet_weight(X, X.dim), "pure"
    if spec.startswith("file:"):
        return fileio.read_weights(spec[5:], X), spec
    raise ConfigError(f"unknown weighting {spec!r}")


def complex_summary(X: SimplicialComplex) -> dict:
    pure = X.is_pure(X.dim)
    return {
        "n_faces_by_dim": {str(k): n for k, n in X.f_vector().items()},
        "pure": pure,
        "d": X.dim,
    }


def run_analyze(X: SimplicialComplex, cfg: RunConfig) -> tuple[dict, int]:
    """Bounds, link spectra and exact Betti numbers over a ``(k, l)`` grid."""
    if X.is_empty:
        raise ConfigError("empty complex")
    w, weighting = resolve_weights(X, cfg.weights)
    runs = []
    ok = True
    for k, l in cfg.pairs(X):
        rep = garland_lower_bounds(X, w, k, l, cfg.tol)
        upper = None
        if k < X.dim:
            upper, _ = upper_bounds_hold(garland_upper_bounds(X, w, k, l), float(rep.delta))
        holds = rep.inequalities_hold and rep.bound_is_sound and upper is not False
        ok &= holds
        lk = rep.link_spectrum
        runs.append({
            "k": k,
            "l": l,
            "weighting": weighting,
            "delta": fmt(rep.delta),
            "threshold": fmt(rep.threshold),
            "link_spectrum_summary": {
                "size": lk.size,
                "min": fmt(lk.smallest(1)) if lk.size else None,
                "count_at_most_threshold": rep.homology_bound,
            },
            "laplacian_spectrum_min": fmt(rep.laplacian_spectrum.smallest(1)),
            "lower_bounds_violations": rep.n_violations,
            "max_violation": fmt(rep.max_violation),
            "homology_bound": rep.homology_bound,
            "exact_betti": rep.exact_betti,
            "upper_bounds_hold": upper,
            "holds": holds,
        })
    doc = {"complex": complex_summary(X), "tolerance_policy": "1e-9*max(1,delta)" if cfg.tol is None else cfg.tol,
           "runs": runs, "all_hold": ok}
    return doc, EXIT_OK if ok else EXIT_VIOLATION


def _verify_complex(X: SimplicialComplex, cfg: RunConfig, results: dict) -> None:
    w, _ = resolve_weights(X, cfg.weights)
    dim = X.dim
    pairs = [(k, l) for k in range(1, dim + 1) for l in range(k)]
    for name, fn in (("lplus", verify_prop_upper), ("lminus", verify_prop_lower)):
        if name in cfg.props:
            checks = [fn(X, w, k, l, exact=cfg.exact) for k, l in pairs]
            results[name] = {"holds": all(c.holds for c in checks), "checked": len(checks),
                             "max_abs_diff": fmt(max((c.max_abs_diff for c in checks), default=0.0)),
                             "exact": cfg.exact}
    if "sign" in cfg.props:
        verdicts = [verify_sign_union(X, k) for k in range(dim)]
        verdicts += [verify_sign1(X, k, l) for k, l in pairs]
        verdicts += [verify_sign2(X, k, l) for k, l in pairs]
        results["sign"] = {"holds": all(v.holds for v in verdicts),
                           "checked": sum(v.checked for v in verdicts)}
    if "interlace" in cfg.props:
        vs = [verify_interlacing(garland_local_system(X, w, k, l)) for k, l in pairs]
        results["interlace_garland"] = {"holds": all(v.holds for v in vs), "systems": len(vs),
                                        "max_violation": fmt(max((v.max_violation for v in vs), default=0.0))}


def run_verify(X: SimplicialComplex | None, cfg: RunConfig) -> tuple[dict, int]:
    results: dict = {}
    if X is not None:
        if X.is_empty:
            raise ConfigError("empty complex")
        _verify_complex(X, cfg, results)
    rng = np.random.default_rng(cfg.seed)
    if "interlace" in cfg.props and cfg.seeds:
        vs = [verify_interlacing(random_local_system(rng)) for _ in range(cfg.seeds)]
        results["interlace_random"] = {"holds": all(v.holds for v in vs), "systems": len(vs),
                                       "max_violation": fmt(max(v.max_violation for v in vs))}
    if "cauchy" in cfg.props and cfg.seeds:
        vs = []
        for _ in range(cfg.seeds):
            n = int(rng.integers(1, 9))
            m = int(rng.integers(1, n + 1))
            A = rng.normal(size=(n, n))
            Q, _ = np.linalg.qr(rng.normal(size=(n, m)))
            vs.append(verify_cauchy(A + A.T, Q))
        results["cauchy"] = {"holds": all(v.holds for v in vs), "checked": len(vs)}
    if "weyl" in cfg.props and cfg.seeds:
        vs = []
        for _ in range(cfg.seeds):
            n = int(rng.integers(1, 9))
            A, B = rng.normal(size=(n, n)), rng.normal(size=(n, n))
            vs.append(verify_weyl(A + A.T, B + B.T))
        results["weyl"] = {"holds": all(v.holds for v in vs), "checked": len(vs)}
    ok = all(r["holds"] for r in results.values())
    doc = {"complex": complex_summary(X) if X is not None else None,
           "seed": cfg.seed, "results": results, "all_hold": ok}
    return doc, EXIT_OK if ok else EXIT_VIOLATION


def run_homology(X: SimplicialComplex) -> dict:
    out = []
    w = constant_weight(X)
    for k in range(X.dim + 1):
        b = homology_dimension(X, k)
        spec = eigenvalues_symmetric(laplacian(X, w, k).entries)
        out.append({"k": k, "betti": b.betti, "rank_dk": b.rank_dk, "rank_dk1": b.rank_dk1,
                    "laplacian_kernel_dim": numeric_kernel_dim(spec)})
    return {"complex": complex_summary(X), "homology": out}


def run_spectrum(X: SimplicialComplex, cfg: RunConfig, flavor: str) -> dict:
    w, weighting = resolve_weights(X, cfg.weights)
    ks = [cfg.k] if cfg.k is not None else range(X.dim + 1)
    out = []
    for k in ks:
        if not 0 <= k <= X.dim:
            raise ConfigError(f"k={k} out of range")
        spec = eigenvalues_symmetric(laplacian(X, w, k, flavor).entries)
        out.append({"k": k, "flavor": flavor, "weighting": weighting,
                    "eigenvalues": [fmt(v) for v in spec.values]})
    return {"complex": complex_summary(X), "spectra": out}


# -- argument handling -------------------------------------------------------

def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("complex", nargs="?", type=Path, help="complex file (one face per line)")
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--weights", default="unit", help="unit | pure | file:<path>")
    p.add_argument("--tol", type=float)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--json", type=Path, dest="json_path", help="write the report here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="simplicial-garland",
                                 description="Weighted simplicial Laplacians and Garland bounds")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Garland bounds over a (k, l) grid")
    _add_source(p)
    _add_common(p)

    p = sub.add_parser("verify", help="exact identities and interlacing checks")
    _add_source(p)
    _add_common(p)
    p.add_argument("--props", default="all", help=f"comma list from {','.join(PROPS)} or 'all'")
    p.add_argument("--seeds", type=int, default=20, help="number of random systems/matrices")
    p.add_argument("--corpus", type=int, default=0, help="also run on N seeded random pure complexes")

    p = sub.add_parser("homology", help="reduced Betti numbers")
    _add_source(p)
    p.add_argument("--json", type=Path, dest="json_path")

    p = sub.add_parser("spectrum", help="Laplacian eigenvalues")
    _add_source(p)
    _add_common(p)
    p.add_argument("--flavor", choices=FLAVORS, default="total")

    p = sub.add_parser("generate", help="write a generated complex file")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path)
    return ap


def _load_complex(args, optional: bool = False) -> SimplicialComplex | None:
    if args.complex is not None and args.model is not None:
        raise ConfigError("give either a complex file or --model, not both")
    if args.complex is not None:
        return fileio.read_complex(args.complex)
    if args.model is not None:
        return generate(args.model, args.n, args.d, args.p, args.seed)
    if optional:
        return None
    raise ConfigError("a complex file or --model is required")


def _emit(doc: dict, path: Path | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _props(spec: str) -> tuple[str, ...]:
    if spec == "all":
        return PROPS
    props = tuple(s.strip() for s in spec.split(",") if s.strip())
    unknown = set(props) - set(PROPS)
    if unknown:
        raise ConfigError(f"unknown props: {', '.join(sorted(unknown))}")
    return props


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "generate":
            X = generate(args.model, args.n, args.d, args.p, args.seed)
            text = fileio.serialize_complex(X)
            if args.output:
                args.output.write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "homology":
            _emit(run_homology(_load_complex(args)), args.json_path)
            return EXIT_OK

        cfg = RunConfig(k=args.k, l=args.l, weights=args.weights, tol=args.tol,
                        exact=args.exact, seed=args.seed)
        if args.command == "spectrum":
            _emit(run_spectrum(_load_complex(args), cfg, args.flavor), args.json_path)
            return EXIT_OK
        if args.command == "analyze":
            doc, code = run_analyze(_load_complex(args), cfg)
        else:
            cfg.props = _props(args.props)
            cfg.seeds = args.seeds
            doc, code = run_verify(_load_complex(args, optional=True), cfg)
            if args.corpus:
                extra = [run_verify(Y, RunConfig(weights=cfg.weights, exact=cfg.exact,
                                                 props=tuple(p for p in cfg.props if p in ("lplus", "lminus", "sign", "interlace")),
                                                 seeds=0))
                         for Y in corpus(args.corpus, cfg.seed)]
                doc["corpus"] = {"size": len(extra), "all_hold": all(c == EXIT_OK for _, c in extra)}
                if not doc["corpus"]["all_hold"]:
                    code = EXIT_VIOLATION
                doc["all_hold"] = code == EXIT_OK
        _emit(doc, args.json_path)
        return code
    except (ConfigError, ComplexError, fileio.ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
