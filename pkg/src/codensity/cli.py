"""Command line: catalog persistence, setting verification and monad tables.

Exit status is 0 when every verdict passes, 1 when a verification fails and
2 for configuration or file errors.  Reports are JSON with sorted keys, so
identical configurations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__

REPORT_SCHEMA = "codensity.report"
REPORT_VERSION = 1
ENV_CATALOG_DIR = "CODENSITY_CATALOG_DIR"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    bundle: str = "filter"
    max_carrier: int = 2
    k_max: int | None = None
    max_size: int | None = None
    semiring: str = "bool"
    catalog: str | None = None
    out: str | None = None
    seed: int = 0
    timing: bool = False

    def check(self) -> None:
        if self.k_max is not None and self.k_max < 1:
            raise ConfigError("k_max must be at least 1")
        if self.max_carrier < 0:
            raise ConfigError("max_carrier must be non-negative")


def emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def render_table(report: dict) -> str:
    """Plain-text summary of a verify report; the JSON stays the source of truth."""
    lines = [f"bundle {report['config']['bundle']}: {'PASS' if report['ok'] else 'FAIL'}"]
    for name, ok in sorted(report["setting"]["verdicts"].items()):
        lines.append(f"  {name:<12} {'pass' if ok else 'FAIL'}")
    lines.append("  carrier  |TX|  first bijective level  stabilized  unit  mult")
    for c in report["comparisons"]:
        lines.append(
            f"  {c['carrier']:>7}  {c['monad_size']:>4}  {str(c['first_bijective']):>21}  {str(c['stabilized_at']):>10}"
            f"  {str(c['unit_preserved']):>4}  {c['mult_preserved']}"
        )
    return "\n".join(lines) + "\n"


def envelope(command: str, config: dict, body: dict) -> dict:
    return {"schema": REPORT_SCHEMA, "version": REPORT_VERSION, "tool_version": __version__, "command": command, "config": config, **body}


def catalog_dir() -> Path:
    return Path(os.environ.get(ENV_CATALOG_DIR, "catalogs"))


def catalog_path(kind: str, max_size: int) -> Path:
    return catalog_dir() / f"{kind}-{max_size}.json"


def load_catalog(kind: str, max_size: int, explicit: str | None):
    """An explicit path must exist; otherwise the catalog directory is consulted, then enumeration."""
    from .finalg import CatalogError, enumerate_catalog, read_catalog

    path = Path(explicit) if explicit else catalog_path(kind, max_size)
    if explicit and not path.exists():
        raise ConfigError(f"catalog file {path} does not exist")
    if path.exists():
        try:
            cat = read_catalog(path)
        except (CatalogError, ValueError, KeyError, json.JSONDecodeError) as exc:
            raise ConfigError(f"catalog {path}: {exc}") from exc
        if cat.kind != kind:
            raise ConfigError(f"catalog {path} holds {cat.kind}, expected {kind}")
        return cat, path.name
    return enumerate_catalog(kind, max_size), None


# catalog build


def cmd_catalog_build(args) -> int:
    from .finalg import CatalogError, enumerate_catalog, write_catalog

    try:
        cat = enumerate_catalog(args.kind, args.max_size)
    except CatalogError as exc:
        raise ConfigError(str(exc)) from exc
    out = Path(args.out) if args.out else catalog_path(args.kind, args.max_size)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        write_catalog(cat, out)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from exc
    counts = {str(k): v for k, v in sorted(cat.by_size().items())}
    print(json.dumps({"kind": cat.kind, "max_size": cat.max_size, "path": str(out), "counts": counts}, sort_keys=True))
    return EXIT_OK


# verify


def build_bundle(cfg: RunConfig):
    from . import dualize

    carriers = tuple(range(cfg.max_carrier + 1))
    if cfg.bundle == "filter":
        size = cfg.max_size or 6
        cat, source = load_catalog("msl", size, cfg.catalog)
        return dualize.filter_bundle(carriers=carriers, cat=cat), source
    if cfg.bundle == "ultrafilter":
        size = cfg.max_size or 16
        cat, source = load_catalog("ba", size, cfg.catalog)
        max_set = max(cfg.max_carrier, 3)
        if 1 << max_set > cat.max_size:
            raise ConfigError(f"sets of size {max_set} need Boolean algebras up to {1 << max_set}")
        return dualize.ultrafilter_bundle(max_set, carriers=carriers, cat=cat), source
    if cfg.bundle == "filter-kleisli":
        return dualize.filter_kleisli_bundle(cfg.max_size or 3, carriers=carriers), None
    if cfg.bundle == "m_s":
        return dualize.measure_bundle(cfg.semiring, cfg.max_size or 2, carriers=carriers), None
    raise ConfigError(f"unknown bundle {cfg.bundle!r}; choose from filter, filter-kleisli, ultrafilter, m_s")


def run_verify(cfg: RunConfig) -> tuple[dict, bool]:
    from .dualize import verify_setting
    from .monadlab import comparison_harness

    cfg.check()
    t0 = time.perf_counter()
    bundle, source = build_bundle(cfg)
    setting = verify_setting(bundle)
    levels = [k for k in bundle.levels if cfg.k_max is None or k <= cfg.k_max]
    comparisons = []
    for n in range(cfg.max_carrier + 1):
        comparisons.append(comparison_harness(bundle, n, max(levels), levels).as_dict())
    ok = setting.ok and all(c["first_bijective"] is not None and c["unit_preserved"] and c["mult_preserved"] is not False for c in comparisons)
    body = {
        "ok": ok,
        "setting": setting.as_dict(),
        "comparisons": comparisons,
        "catalog_file": source,
        "note": "a bijective truncated comparison is evidence at the listed levels, not a proof for the full limit",
    }
    if cfg.timing:
        body["timing_seconds"] = round(time.perf_counter() - t0, 3)
    return envelope("verify", asdict(cfg), body), ok


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} is not a JSON object")
    unknown = set(doc) - set(RunConfig.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"config {path}: unknown keys {sorted(unknown)}")
    return doc


def cmd_verify(args) -> int:
    base = load_config(args.config)
    for key in ("bundle", "max_carrier", "k_max", "max_size", "semiring", "catalog", "out", "seed"):
        v = getattr(args, key)
        if v is not None:
            base[key] = v
    if args.timing:
        base["timing"] = True
    try:
        cfg = RunConfig(**base)
    except TypeError as exc:
        raise ConfigError(f"bad configuration: {exc}") from exc
    report, ok = run_verify(cfg)
    out = cfg.out
    cfg_out = report["config"]
    cfg_out.pop("out", None)
    if args.format == "table":
        sys.stdout.write(render_table(report))
        if out:
            emit(report, out)
    else:
        emit(report, out)
    return EXIT_OK if ok else EXIT_FAIL


# compute


def compute_report(name: str, size: int, semiring: str = "bool", q: int = 2, list_cap: int = 256) -> dict:
    from .monad import UniverseClosureError
    from .monadlab import PRESETS, preset

    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    if name == "expectation-finite":
        raise ConfigError("the expectation monad has infinite values; see the probfin module")
    if name in ("lower-vietoris", "sobrification", "filter-top"):
        from . import fintop

        M = fintop.topological_monad(name, max_points=0)
        X = fintop.discrete(size)
        representation = "homomorphisms from the opens of the discrete space into 2"
    elif name == "msl-double-dual":
        from .finalg import powerset_msl

        M = preset(name, 1)
        X = powerset_msl(size)
        representation = "meet-semilattice homomorphisms MSL(MSL(X, 2), 2) for X the powerset semilattice"
    elif name == "vect-double-dual":
        from .finalg import vector_space

        M = preset(name, 1, q=q)
        X = vector_space(q, size)
        representation = f"linear forms on the dual of GF({q})^{size}"
    else:
        M = preset(name, size, semiring_name=semiring)
        X = size
        representation = f"homomorphisms into {M.spec.T.kind} algebra of size {M.spec.T.size} from the dual maps"
    spec = M.spec
    TX = M.obj(X)
    n_T = M.size(TX)
    A, maps, _ = spec.L(X)
    hs, _ = spec.R(A)
    body = {
        "monad": M.name,
        "carrier_size": M.size(X),
        "cardinality": n_T,
        "representation": representation,
        "dual_maps": [list(m) for m in maps[:list_cap]],
        "elements": [list(h) for h in hs[:list_cap]],
        "unit": list(M.unit(X)),
        "notes": [],
    }
    if len(hs) > list_cap:
        body["notes"].append(f"element list truncated to {list_cap}")
    try:
        M.guard(TX, "T X")
        body["mult"] = list(M.mult(X))
    except UniverseClosureError as exc:
        body["mult"] = None
        body["notes"].append(f"multiplication not materialised: {exc}")
    return body


def cmd_compute(args) -> int:
    body = compute_report(args.preset, args.size, args.semiring, args.q)
    cfg = {"preset": args.preset, "size": args.size, "semiring": args.semiring, "q": args.q}
    emit(envelope("compute", cfg, body), args.out)
    return EXIT_OK


# density and dualities


def cmd_density_check(args) -> int:
    from .dualize import catalog_category
    from .fincat import check_dense, full_subcategory
    from .setdiag import set_category

    if args.kind == "set":
        C, _ = set_category(args.max_size)
        objs = [i for i in range(C.n_objects) if i <= args.sub_max_size]
    else:
        cat, _ = load_catalog(args.kind, args.max_size, args.catalog)
        C = catalog_category(cat)
        objs = [i for i, A in enumerate(cat.representatives) if A.size <= args.sub_max_size]
    if args.objects:
        objs = [int(x) for x in args.objects.split(",")]
    _, inc = full_subcategory(C, objs)
    rep = check_dense(inc, shortcut=not args.direct)
    body = {
        "ok": rep.dense,
        "dense": rep.dense,
        "faithful": rep.faithful,
        "full": rep.full,
        "subcategory": [C.objects[i] for i in objs],
        "category": list(C.objects),
        "settled_by": [C.objects[objs[i]] for i in rep.via] if rep.via else None,
        "failures": rep.failures[:20],
    }
    cfg = {"kind": args.kind, "max_size": args.max_size, "sub_max_size": args.sub_max_size, "objects": args.objects, "direct": args.direct}
    emit(envelope("density-check", cfg, body), args.out)
    return EXIT_OK if rep.dense else EXIT_FAIL


def duality_report(which: str, max_size: int | None, samples: int, seed: int) -> dict:
    import random

    from . import dualize
    from .fincat import check_equivalence, validate
    from .finalg import double_dual_map, vector_space
    from .finalg.relations import random_relation, rel_compose, rel_transpose

    if which == "vect":
        q = 2
        dims = range((max_size or 3) + 1)
        bij = {str(d): len(set(double_dual_map(vector_space(q, d)))) == q**d for d in dims}
        return {"ok": all(bij.values()), "duality": "finite-dimensional vector spaces over GF(2)", "double_dual_bijective": bij}
    if which == "birkhoff":
        d = dualize.birkhoff(max_size=max_size or 16)
    elif which == "msl":
        d = dualize.msl_self_duality(max_size=max_size or 6)
    elif which == "relations":
        bound = max_size or 3
        d = dualize.rel_self_duality(bound)
    else:
        raise ConfigError(f"unknown duality {which!r}")
    verdicts = {
        "forward_valid": validate(d.forward).ok,
        "backward_valid": validate(d.backward).ok,
        "unit_valid": validate(d.unit).ok,
        "counit_valid": validate(d.counit).ok,
        "forward_equivalence": check_equivalence(d.forward).is_equivalence,
        "backward_equivalence": check_equivalence(d.backward).is_equivalence,
    }
    tri = dualize.triangle_identities(d)
    verdicts["triangle_identities"] = not tri
    body = {"duality": d.name, "objects": d.forward.source.n_objects, "morphisms": d.forward.source.n_morphisms}
    if which == "relations":
        rng = random.Random(seed)
        bad = 0
        for _ in range(samples):
            a, b, c = (rng.randint(0, 4) for _ in range(3))
            f, g = random_relation(rng, a, b), random_relation(rng, b, c)
            if rel_transpose(rel_transpose(f, b), a) != tuple(f):
                bad += 1
            if rel_transpose(rel_compose(g, f), c) != rel_compose(rel_transpose(f, b), rel_transpose(g, c)):
                bad += 1
        verdicts["random_involution_and_reversal"] = bad == 0
    body["verdicts"] = verdicts
    body["witnesses"] = tri[:20]
    body["ok"] = all(verdicts.values())
    return body


def cmd_duality_check(args) -> int:
    body = duality_report(args.duality, args.max_size, args.samples, args.seed)
    cfg = {"duality": args.duality, "max_size": args.max_size, "samples": args.samples, "seed": args.seed}
    emit(envelope("duality-check", cfg, body), args.out)
    return EXIT_OK if body["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codensity", description="Finite codensity settings: catalogs, verification and monad tables.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="algebra catalogs")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    build = cat_sub.add_parser("build", help="enumerate a catalog and write it as JSON")
    build.add_argument("--kind", required=True, choices=["msl", "jsl", "ba", "module", "vect"])
    build.add_argument("--max-size", type=int, required=True)
    build.add_argument("--out", help=f"output file (default ${ENV_CATALOG_DIR}/<kind>-<max>.json)")
    build.set_defaults(func=cmd_catalog_build)

    ver = sub.add_parser("verify", help="check a codensity setting and compare with truncated limits")
    ver.add_argument("--bundle", choices=["filter", "filter-kleisli", "ultrafilter", "m_s"])
    ver.add_argument("--max-carrier", type=int)
    ver.add_argument("--k-max", type=int)
    ver.add_argument("--max-size", type=int, help="catalog or fragment size bound")
    ver.add_argument("--semiring", choices=["bool", "z3", "chain3"])
    ver.add_argument("--catalog", help="catalog file to use instead of enumerating")
    ver.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    ver.add_argument("--seed", type=int)
    ver.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte reproducibility)")
    ver.add_argument("--format", choices=["json", "table"], default="json", help="table prints a summary; --out still receives JSON")
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)

    comp = sub.add_parser("compute", help="tables of a named monad at one carrier")
    comp.add_argument("preset")
    comp.add_argument("size", type=int)
    comp.add_argument("--semiring", default="bool", choices=["bool", "z3", "chain3"])
    comp.add_argument("--q", type=int, default=2)
    comp.add_argument("--out")
    comp.set_defaults(func=cmd_compute)

    den = sub.add_parser("density-check", help="density of a full subcategory of small algebras or sets")
    den.add_argument("--kind", required=True, choices=["set", "msl", "jsl", "ba"])
    den.add_argument("--max-size", type=int, required=True)
    den.add_argument("--sub-max-size", type=int, default=0)
    den.add_argument("--objects", help="comma separated object indices (overrides --sub-max-size)")
    den.add_argument("--catalog")
    den.add_argument("--direct", action="store_true", help="enumerate naturals without reductions")
    den.add_argument("--out")
    den.set_defaults(func=cmd_density_check)

    dua = sub.add_parser("duality-check", help="round trips of a finite duality")
    dua.add_argument("duality", choices=["birkhoff", "msl", "relations", "vect"])
    dua.add_argument("--max-size", type=int)
    dua.add_argument("--samples", type=int, default=200)
    dua.add_argument("--seed", type=int, default=0)
    dua.add_argument("--out")
    dua.set_defaults(func=cmd_duality_check)
    return p


def main(argv: list[str] | None = None) -> int:
    from .monad import UniverseClosureError

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UniverseClosureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
