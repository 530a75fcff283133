"""Command-line front end.

Exit codes: 0 when a question was decided or an experiment completed,
2 when the verdict is Undecided, 1 for usage and validation errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

from . import __version__
from .conjugacy import (
    Conjugate,
    Decision,
    Distinct,
    NotConjugate,
    Undecided,
    decide,
    membership,
    solution_bound,
)
from .density import (
    ExperimentResult,
    certificate_rate_experiment,
    coprime_density_experiment,
    expected_gcd_reciprocal_experiment,
    image_density_experiment,
    rank1_expected_density_experiment,
    remnant_density_experiment,
)
from .homomorphism import FreeHomomorphism, TwistedPair, format_hom, parse_hom
from .remnant import RemnantReport, remnant_report
from .words import RankError, Word, WordError, format_word, parse_word

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2

EXPERIMENTS = (
    "coprime",
    "gcd-mean",
    "remnant-density",
    "image-density",
    "rank1-expected",
    "certificate-rate",
)

# default radius p per experiment when --p is not given
_DEFAULT_P = {
    "coprime": 10_000,
    "gcd-mean": 10_000,
    "remnant-density": 10,
    "image-density": 8,
    "rank1-expected": 10_000,
    "certificate-rate": 8,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _infer_rank(*texts: str) -> int:
    top = 1
    for text in texts:
        if text is None or text.strip().lower() in ("identity", "trivial"):
            continue
        for letter in re.findall(r"[a-zA-Z]", re.sub(r"g\d+'?", "", text)):
            top = max(top, ord(letter.lower()) - ord("a") + 1)
        for idx in re.findall(r"g(\d+)", text):
            top = max(top, int(idx))
    return top


def _word(text: str, rank: int, name: str) -> Word:
    try:
        return parse_word(text, rank)
    except WordError as exc:
        raise UsageError(f"argument {name}: {exc}") from None


def _hom(text: str, codomain: int, domain: int | None, name: str) -> FreeHomomorphism:
    try:
        return parse_hom(text, codomain, domain)
    except (WordError, RankError) as exc:
        raise UsageError(f"argument {name}: {exc}") from None


def _report_doc(report: RemnantReport, images: Sequence[Word]) -> dict[str, Any]:
    return {
        "generators": [
            {
                "index": i,
                "image": format_word(h),
                "left_cancel": e.left_cancel,
                "right_cancel": e.right_cancel,
                "remnant": format_word(e.remnant) if e.survives else None,
                "length": e.length if e.survives else None,
                "survives": e.survives,
            }
            for i, (h, e) in enumerate(zip(images, report.entries), start=1)
        ],
        "has_remnant": report.has_remnant,
        "remnant_length": report.remnant_length,
    }


def _decision_doc(decision: Decision, bound: int | None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "verdict": decision.verdict,
        "witness": None,
        "bound": bound,
        "candidates": 0,
        "certificate": None,
        "reason": None,
    }
    if isinstance(decision, Conjugate):
        doc["witness"] = format_word(decision.witness)
        doc["candidates"] = decision.candidates
    elif isinstance(decision, NotConjugate):
        doc["bound"] = decision.exhausted_bound
        doc["candidates"] = decision.candidates
    elif isinstance(decision, Distinct):
        cert = decision.certificate
        doc["certificate"] = {
            "kind": cert.kind,
            "remnants": [format_word(w) for w in cert.report.remnants],
        }
    elif isinstance(decision, Undecided):
        doc["reason"] = decision.reason.value
    return doc


def _emit(doc: dict[str, Any], text_lines: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _decision_text(doc: dict[str, Any]) -> list[str]:
    lines = [f"verdict: {doc['verdict']}"]
    if doc["certificate"] is not None:
        cert = doc["certificate"]
        lines.append(f"certificate: {cert['kind']} remnants {' '.join(cert['remnants'])}")
    if doc["witness"] is not None:
        lines.append(f"witness: {doc['witness']}")
    if doc["reason"] is not None:
        lines.append(f"reason: {doc['reason']}")
    lines.append(f"bound: {'-' if doc['bound'] is None else doc['bound']}")
    lines.append(f"candidates: {doc['candidates']}")
    return lines


def _cmd_remnant(args, out) -> int:
    phi = _hom(args.phi, args.rank, None, "--phi")
    report = remnant_report(phi.images)
    doc = {"command": "remnant", "rank": args.rank, "phi": format_hom(phi)}
    doc.update(_report_doc(report, phi.images))
    lines = [f"{'gen':>4} {'image':>14} {'L':>3} {'R':>3} {'remnant':>14} {'len':>4}"]
    for g in doc["generators"]:
        lines.append(
            f"{g['index']:>4} {g['image']:>14} {g['left_cancel']:>3} {g['right_cancel']:>3} "
            f"{g['remnant'] or '-':>14} {'-' if g['length'] is None else g['length']:>4}"
        )
    lines.append(
        "remnant length: "
        + ("none" if report.remnant_length is None else str(report.remnant_length))
    )
    _emit(doc, lines, args.format, out)
    return EXIT_OK


def _cmd_decide(args, out) -> int:
    m = args.rank_codomain or _infer_rank(args.phi, args.psi, args.u, args.v)
    phi = _hom(args.phi, m, args.rank_domain, "--phi")
    n = phi.domain_rank
    psi = _hom(args.psi, m, n, "--psi")
    u = _word(args.u, m, "-u")
    v = _word(args.v, m, "-v")
    pair = TwistedPair(phi, psi)
    decision = decide(pair, u, v)
    bound = solution_bound(pair, u, v)
    doc = {
        "command": "decide",
        "rank_domain": n,
        "rank_codomain": m,
        "phi": format_hom(phi),
        "psi": format_hom(psi),
        "u": format_word(u),
        "v": format_word(v),
    }
    doc.update(_decision_doc(decision, bound))
    _emit(doc, _decision_text(doc), args.format, out)
    return EXIT_UNDECIDED if isinstance(decision, Undecided) else EXIT_OK


def _cmd_member(args, out) -> int:
    m = args.rank_codomain or _infer_rank(args.phi, args.w)
    phi = _hom(args.phi, m, args.rank_domain, "--phi")
    w = _word(args.w, m, "-w")
    decision = membership(phi, w)
    bound = None
    if not isinstance(decision, Undecided):
        bound = decision.bound if isinstance(decision, Conjugate) else decision.exhausted_bound
    doc = {
        "command": "member",
        "rank_domain": phi.domain_rank,
        "rank_codomain": m,
        "phi": format_hom(phi),
        "w": format_word(w),
        "member": None if isinstance(decision, Undecided) else isinstance(decision, Conjugate),
    }
    doc.update(_decision_doc(decision, bound))
    lines = [
        "member: "
        + {None: "unknown", True: "yes", False: "no"}[doc["member"]]
    ] + _decision_text(doc)
    _emit(doc, lines, args.format, out)
    return EXIT_UNDECIDED if isinstance(decision, Undecided) else EXIT_OK


def _run_experiment(args) -> ExperimentResult:
    kind = args.kind
    p = _DEFAULT_P[kind] if args.p is None else args.p
    common = dict(samples=args.samples, seed=args.seed, workers=args.workers)
    if kind == "coprime":
        return coprime_density_experiment(args.n, p, **common)
    if kind == "gcd-mean":
        return expected_gcd_reciprocal_experiment(args.n, p, **common)
    if kind == "remnant-density":
        return remnant_density_experiment(args.n, args.m, args.l, p, **common)
    if kind == "image-density":
        if args.phi is None:
            raise UsageError("argument --phi: required for image-density")
        m = args.m if args.m is not None else _infer_rank(args.phi)
        return image_density_experiment(_hom(args.phi, m, None, "--phi"), p, **common)
    if kind == "rank1-expected":
        return rank1_expected_density_experiment(p, **common)
    psi = args.psi or "identity"
    return certificate_rate_experiment(args.n, args.m, p, psi, **common)


def _cmd_experiment(args, out) -> int:
    if args.m is None and args.kind in ("remnant-density", "certificate-rate"):
        args.m = 2
    try:
        result = _run_experiment(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = result.to_dict(timing=args.timing)
    lines = [f"experiment: {doc['experiment']}"]
    lines += [f"  {k} = {v}" for k, v in doc["parameters"].items()]
    lines += [
        f"seed: {doc['seed']}",
        f"samples: {doc['samples']}",
        f"estimate: {doc['estimate']:.6f} +/- {doc['std_error']:.6f}",
        "reference: " + ("none" if doc["reference"] is None else f"{doc['reference']:.6f}"),
    ]
    if args.timing:
        lines.append(f"elapsed_ms: {doc['elapsed_ms']:.1f}")
    _emit(doc, lines, args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistconj", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("remnant", parents=[fmt], help="remnant report of an image tuple")
    p.add_argument("--rank", type=int, required=True, help="rank of the codomain")
    p.add_argument("--phi", required=True, help='comma-separated images, e.g. "babaa,aaBabbb"')
    p.set_defaults(func=_cmd_remnant)

    p = sub.add_parser("decide", parents=[fmt], help="decide u = phi(z) v psi(z)^-1")
    p.add_argument("--rank-domain", type=int)
    p.add_argument("--rank-codomain", type=int)
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True, help="images, or 'identity' / 'trivial'")
    p.add_argument("-u", required=True)
    p.add_argument("-v", required=True)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("member", parents=[fmt], help="decide whether w lies in phi(G)")
    p.add_argument("--rank-domain", type=int)
    p.add_argument("--rank-codomain", type=int)
    p.add_argument("--phi", required=True)
    p.add_argument("-w", required=True)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("experiment", parents=[fmt], help="seeded density experiments")
    p.add_argument("kind", choices=EXPERIMENTS)
    p.add_argument("--n", type=int, default=2, help="domain rank / tuple size")
    p.add_argument("--m", type=int, default=None, help="codomain rank")
    p.add_argument("--l", type=int, default=1, help="remnant length threshold")
    p.add_argument("--p", type=int, default=None, help="sampling radius")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--phi", help="map for image-density")
    p.add_argument("--psi", help="fixed psi for certificate-rate (default identity)")
    p.add_argument("--timing", action="store_true", help="report elapsed_ms")
    p.set_defaults(func=_cmd_experiment)
    return parser


def _validate_ranks(args) -> None:
    for name in ("rank", "rank_domain", "rank_codomain", "m"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise UsageError(f"argument --{name.replace('_', '-')}: must be positive")
    if getattr(args, "samples", 1) < 1:
        raise UsageError("argument --samples: must be positive")
    if getattr(args, "workers", 1) < 1:
        raise UsageError("argument --workers: must be positive")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate_ranks(args)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"twistconj: error: {exc}\n")
        return EXIT_ERROR
    except (WordError, RankError) as exc:
        err.write(f"twistconj: error: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
