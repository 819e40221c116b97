"""Command-line front end: ``python -m nctower <command> ...``.

Exit codes: 0 success, 1 check failure, 2 input error, 3 capacity error.
With ``--json`` every result, and every error, is one JSON document on stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .closure import DEFAULT_MAX_COSETS, free_normal_closure
from .errors import CapacityError, InternalConsistencyError, NCTowerError, RejectedInputError
from .fp import Presentation, perm_realization, todd_coxeter
from .perm import GroupHom, PermGroup, lower_central_series, make_hom, upper_central_series
from .presets import preset
from .tower import (
    DEFAULT_MAX_STAGES,
    bound_g,
    build_tower,
    inverse_limit,
    kernel_commutator_series,
    subnormal_closure_series,
)
from .verify import CORPORA, THEOREMS, Instance, build_corpus, run_corpus, summarize

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3

PRESENTATION_COSETS = 100_000


@dataclass
class JobSpec:
    command: str
    inputs: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    json: bool = False


def _load_json_spec(spec: str):
    text = spec.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise RejectedInputError(f"malformed JSON: {exc}") from None
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise RejectedInputError(f"malformed JSON in {spec}: {exc}") from None
    return None


def parse_group(spec) -> PermGroup:
    """Preset name, JSON object (``{degree, generators}`` or ``{gens, relators}``) or file path."""
    if isinstance(spec, PermGroup):
        return spec
    obj = spec if isinstance(spec, dict) else _load_json_spec(spec)
    if obj is None:
        return preset(spec.strip())
    if not isinstance(obj, dict):
        raise RejectedInputError("group JSON must be an object")
    if "gens" in obj:
        p = Presentation.from_json(obj)
        t = todd_coxeter(p, (), PRESENTATION_COSETS)
        if not t.is_complete:
            raise CapacityError(
                f"presentation did not enumerate within {PRESENTATION_COSETS} cosets", bound=PRESENTATION_COSETS
            )
        G, _ = perm_realization(t, p)
        G.name = obj.get("name")
        return G
    return PermGroup.from_json(obj)


def _split_images(images) -> list:
    if isinstance(images, (list, tuple)):
        return list(images)
    obj = _load_json_spec(images)
    if obj is not None:
        if not isinstance(obj, list):
            raise RejectedInputError("images JSON must be a list")
        return obj
    return [s.strip() for s in images.split(";")]


def parse_hom(domain_spec, codomain_spec, images) -> GroupHom:
    """Verified homomorphism from generator images (``;``-separated cycles or a JSON list)."""
    domain = parse_group(domain_spec)
    codomain = parse_group(codomain_spec)
    imgs = _split_images(images)
    if len(imgs) != len(domain.generators):
        raise RejectedInputError(
            f"{len(imgs)} images given but the domain has {len(domain.generators)} generators"
        )
    return make_hom(domain, codomain, imgs)


# commands


def _series(job: JobSpec) -> tuple:
    phi = job.inputs["phi"]
    gamma, G = phi.domain, phi.codomain
    c = subnormal_closure_series(G, phi.image())
    k = kernel_commutator_series(gamma, phi.kernel())
    out = {
        "C": c.orders(),
        "frak_c_order": c.terminal.order(),
        "K": k.orders(),
        "frak_k_order": k.terminal.order(),
        "lower_central_domain": [H.order() for H in lower_central_series(gamma)],
        "lower_central_codomain": [H.order() for H in lower_central_series(G)],
        "upper_central_domain": [H.order() for H in upper_central_series(gamma)],
        "upper_central_codomain": [H.order() for H in upper_central_series(G)],
    }
    text = "\n".join([
        f"C_i orders: {out['C']}  terminal |C| = {out['frak_c_order']}",
        f"K_i orders: {out['K']}  terminal |K| = {out['frak_k_order']}",
        f"gamma_i(Gamma): {out['lower_central_domain']}  gamma_i(G): {out['lower_central_codomain']}",
        f"Z_i(Gamma): {out['upper_central_domain']}  Z_i(G): {out['upper_central_codomain']}",
    ])
    return EXIT_OK, out, text


def _closure(job: JobSpec) -> tuple:
    phi = job.inputs["phi"]
    res = free_normal_closure(None, None, phi, max_cosets=job.options["max_cosets"],
                              force_peiffer=job.options.get("force_peiffer", False))
    out = res.to_json(with_index=job.options.get("index", False))
    text = (
        f"closure order {out['closure_order']} ({out['path']} path); boundary image "
        f"{out['boundary_image_order']}, boundary kernel {out['boundary_kernel_order']}; "
        f"checks {'ok' if res.report.ok else 'FAILED'}"
    )
    return EXIT_OK, out, text


def _tower(job: JobSpec) -> tuple:
    phi = job.inputs["phi"]
    reduce_first = job.options["reduce"]
    cap = job.options["max_cosets"] if job.options["max_cosets"] is not None else None
    if cap is None and not reduce_first:
        cap = DEFAULT_MAX_COSETS
    T = build_tower(phi, reduce_first=reduce_first, max_stages=job.options["max_stages"], coset_bound=cap)
    out = T.to_json()
    lines = [f"stage {r['stage']}: order {r['order']}"
             + (f", connecting kernel {r['connecting_kernel_order']}" if r["connecting_kernel_order"] is not None else "")
             for r in out["stages"]]
    lines.append(T.message)
    return EXIT_OK, out, "\n".join(lines)


def _limit(job: JobSpec) -> tuple:
    phi = job.inputs["phi"]
    L = inverse_limit(phi, max_stages=job.options["max_stages"], coset_bound=job.options["max_cosets"])
    out = L.to_json()
    red = L.reduction
    text = "\n".join([
        f"|Gamma_inf| = {out['limit_order']}, stabilized at stage {out['stabilized_at']} "
        f"(tower orders {out['tower_orders']})",
        f"bound |Gamma/K| * g(|C|) = {red.psi.domain.order()} * g({red.frak_c.order()}) = {out['bound']:g}; "
        f"slack {out['bound_slack']:g}",
        f"phi_inf kernel order {out['into_limit_kernel_order']}, bijective: {out['into_limit_bijective']}",
    ])
    return EXIT_OK, out, text


def _verify(job: JobSpec) -> tuple:
    theorems = [job.options["theorem"]] if job.options.get("theorem") else None
    if "phi" in job.inputs:
        corpus = [Instance("input", job.inputs["phi"])]
    else:
        corpus = build_corpus(job.options["corpus"])
    reports = run_corpus(corpus, theorems)
    summary = summarize(reports)
    out = {"reports": [r.to_json() for r in reports], "summary": summary}
    lines = [f"{r.status.upper():8s} {r.theorem:22s} {r.instance}" for r in reports]
    lines.append(
        f"{summary['pass']} pass, {summary['fail']} fail, {summary['skip']} skip, {summary['capacity']} capacity"
    )
    code = EXIT_OK if summary["ok"] else EXIT_CHECK_FAILED
    return code, out, "\n".join(lines)


def _bound(job: JobSpec) -> tuple:
    t = job.inputs["t"]
    v = bound_g(t)
    return EXIT_OK, {"t": t, "g": v}, repr(v)


COMMANDS = {
    "series": _series,
    "closure": _closure,
    "tower": _tower,
    "limit": _limit,
    "verify": _verify,
    "bound": _bound,
}


def run(job: JobSpec) -> tuple:
    """Dispatch a job; returns ``(exit_code, payload)`` and never raises for library errors."""
    try:
        code, payload, text = COMMANDS[job.command](job)
        return code, {"ok": code == EXIT_OK, "command": job.command, "result": payload}, text
    except CapacityError as exc:
        return EXIT_CAPACITY, _error(job, exc, EXIT_CAPACITY), f"capacity error: {exc}"
    except RejectedInputError as exc:
        return EXIT_INPUT, _error(job, exc, EXIT_INPUT), f"input error: {exc}"
    except InternalConsistencyError as exc:
        return EXIT_CHECK_FAILED, _error(job, exc, EXIT_CHECK_FAILED), f"check failed: {exc}"
    except NCTowerError as exc:
        return EXIT_CHECK_FAILED, _error(job, exc, EXIT_CHECK_FAILED), f"error: {exc}"


def _error(job: JobSpec, exc: Exception, code: int) -> dict:
    out = {"ok": False, "command": job.command, "error": type(exc).__name__, "message": str(exc),
           "exit_code": code}
    bound = getattr(exc, "bound", None)
    if bound is not None:
        out["bound"] = bound
    return out


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document on stdout")

    hom = argparse.ArgumentParser(add_help=False)
    hom.add_argument("--domain", required=True, help="preset name, JSON object or JSON file")
    hom.add_argument("--codomain", required=True, help="preset name, JSON object or JSON file")
    hom.add_argument("--images", required=True,
                     help="generator images: ';'-separated cycles (e for identity) or a JSON list")

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-stages", type=_positive, default=DEFAULT_MAX_STAGES)
    caps.add_argument("--max-cosets", type=_positive, default=None,
                      help="coset cap per closure (default: 4 |Gamma/K| g(|C|) when reducing)")

    parser = argparse.ArgumentParser(prog="nctower", description="Normal closures towers of finite group homomorphisms.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("series", parents=[common, hom], help="series of normal closures, commutators, central series")
    p = sub.add_parser("closure", parents=[common, hom], help="free normal closure of a homomorphism")
    p.add_argument("--max-cosets", type=_positive, default=DEFAULT_MAX_COSETS)
    p.add_argument("--force-peiffer", action="store_true", help="use the Peiffer construction even when surjective")
    p.add_argument("--index", action="store_true", help="include the generator index in JSON output")
    p = sub.add_parser("tower", parents=[common, hom, caps], help="normal closures tower")
    p.add_argument("--reduce", dest="reduce", action="store_true", default=True)
    p.add_argument("--no-reduce", dest="reduce", action="store_false")
    sub.add_parser("limit", parents=[common, hom, caps], help="inverse limit with all invariants checked")
    p = sub.add_parser("verify", parents=[common], help="run the theorem checks")
    p.add_argument("--corpus", choices=CORPORA, default="small")
    p.add_argument("--theorem", choices=sorted(THEOREMS), default=None)
    p.add_argument("--domain")
    p.add_argument("--codomain")
    p.add_argument("--images")
    p = sub.add_parser("bound", parents=[common], help="evaluate g(t)")
    p.add_argument("t", type=_positive)
    return parser


def _job_from_args(args) -> JobSpec:
    job = JobSpec(args.command, json=args.json)
    if args.command == "bound":
        job.inputs["t"] = args.t
        return job
    if args.command == "verify":
        job.options.update(corpus=args.corpus, theorem=args.theorem)
        given = [args.domain, args.codomain, args.images]
        if any(v is not None for v in given):
            if not all(v is not None for v in given):
                raise RejectedInputError("--domain, --codomain and --images must be given together")
            job.inputs["phi"] = parse_hom(args.domain, args.codomain, args.images)
        return job
    job.inputs["phi"] = parse_hom(args.domain, args.codomain, args.images)
    if args.command == "closure":
        job.options.update(max_cosets=args.max_cosets, force_peiffer=args.force_peiffer, index=args.index)
    elif args.command in ("tower", "limit"):
        job.options.update(max_stages=args.max_stages, max_cosets=args.max_cosets)
        if args.command == "tower":
            job.options["reduce"] = args.reduce
    return job


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = _job_from_args(args)
    except (RejectedInputError, CapacityError) as exc:
        code = EXIT_CAPACITY if isinstance(exc, CapacityError) else EXIT_INPUT
        job = JobSpec(args.command, json=args.json)
        payload = _error(job, exc, code)
        text = f"{'capacity' if code == EXIT_CAPACITY else 'input'} error: {exc}"
        _emit(job, payload, text, code)
        return code
    code, payload, text = run(job)
    _emit(job, payload, text, code)
    return code


def _emit(job: JobSpec, payload: dict, text: str, code: int) -> None:
    if job.json:
        print(json.dumps(payload, sort_keys=True))
    elif code in (EXIT_INPUT, EXIT_CAPACITY) or "error" in payload:
        print(text, file=sys.stderr)
    else:
        print(text)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
