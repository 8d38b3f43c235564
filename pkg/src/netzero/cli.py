"""Command-line interface: model ingestion, analysis dispatch, reporting.

Model files are JSON documents holding agent state-space triples and the
coupling quadruple; reports are single JSON documents that echo the model,
the options and every tolerance, so any number they contain can be
reproduced from the report alone.  Optionally the finite-zero sets are
rendered to a figure and/or a delimited table alongside the report.

Exit codes: 0 success, 1 hypothesis violation or cross-check mismatch,
2 input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from ._numeric import CLUSTER_TOL, cluster_points, sample_circle, sort_complex
from .blocking import blocked_transfer_eval, blocked_transfer_structured, block_system, correspondence_report
from .homogeneous import (
    ApplicabilityError,
    CirculantSpec,
    HomogeneousNetwork,
    HypothesisViolationError,
    circulant_matrix,
    circulant_zero_report,
    design_check,
    homogeneous_zero_report,
)
from .model import (
    AgentSystem,
    Interconnection,
    close_loop,
    interconnection_transfer_eval,
    network_transfer_eval,
    validate_network,
)
from .rational import siso_from_statespace
from .zeros import ZeroReport, invariant_zeros, match_zero_multisets, system_pencil
from ._numeric import numeric_rank

__all__ = ["ModelError", "ModelFile", "Options", "Report", "parse_model", "run_command", "write_report", "main"]

COMMANDS = ("zeros", "homog", "circulant", "block", "design", "verify")


class ModelError(ValueError):
    """Malformed or inconsistent model file; message names the field."""


@dataclass(frozen=True)
class Options:
    seed: int = 0
    tol: float = CLUSTER_TOL
    samples: int = 7
    T: int = 2
    out: str | None = None
    plot: str | None = None
    csv: str | None = None


@dataclass
class ModelFile:
    """Parsed and validated model: agents plus coupling."""

    agents: tuple[AgentSystem, ...]
    coupling: Interconnection
    homogeneous_shorthand: bool
    circulant: CirculantSpec | None
    canonical: dict


@dataclass
class Report:
    command: str
    model_digest: str
    options: dict
    model: dict
    results: dict
    findings: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "finding" if self.findings else "ok"

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "model_digest": self.model_digest,
            "options": self.options,
            "model": self.model,
            "results": self.results,
            "findings": list(self.findings),
            "status": self.status,
        }


def _matrix_field(node, name: str) -> list[list[float]]:
    if not isinstance(node, list) or not node or not all(isinstance(r, list) for r in node):
        raise ModelError(f"{name} must be a nested array of numbers (list of rows)")
    width = len(node[0])
    out = []
    for i, row in enumerate(node):
        if len(row) != width:
            raise ModelError(f"{name} row {i + 1} has {len(row)} entries, expected {width}")
        try:
            out.append([float(x) for x in row])
        except (TypeError, ValueError):
            raise ModelError(f"{name} row {i + 1} contains a non-numeric entry") from None
    return out


def _agent_from_json(node, name: str) -> AgentSystem:
    if not isinstance(node, dict):
        raise ModelError(f"{name} must be an object with A, B, C")
    for key in ("A", "B", "C"):
        if key not in node:
            raise ModelError(f"{name}.{key} is missing")
    try:
        return AgentSystem(
            A=np.array(_matrix_field(node["A"], f"{name}.A")),
            B=np.array(_matrix_field(node["B"], f"{name}.B")),
            C=np.array(_matrix_field(node["C"], f"{name}.C")),
        )
    except ValueError as exc:
        raise ModelError(f"{name}: {exc}") from None


def parse_model(path: str) -> ModelFile:
    """Read, validate and normalize a JSON model file.

    Raises :class:`ModelError` with field context for malformed input or
    dimension violations (the latter delegated to validate_network).
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ModelError(f"cannot read model file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelError(f"model file is not valid JSON: {exc}") from None
    return model_from_dict(doc)


def model_from_dict(doc) -> ModelFile:
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    has_list = "agents" in doc
    has_shorthand = "agent" in doc or "count" in doc
    if has_list == has_shorthand:
        raise ModelError("exactly one of 'agents' or 'agent'+'count' must be present")
    if has_shorthand:
        if "agent" not in doc or "count" not in doc:
            raise ModelError("homogeneous shorthand requires both 'agent' and 'count'")
        count = doc["count"]
        if not isinstance(count, int) or count < 1:
            raise ModelError("count must be a positive integer")
        base = _agent_from_json(doc["agent"], "agent")
        agents = tuple([base] * count)
    else:
        if not isinstance(doc["agents"], list) or not doc["agents"]:
            raise ModelError("agents must be a nonempty array")
        agents = tuple(
            _agent_from_json(a, f"agents[{i}]") for i, a in enumerate(doc["agents"])
        )

    if "coupling" not in doc or not isinstance(doc["coupling"], dict):
        raise ModelError("coupling must be an object with L, R, S, D")
    cdoc = doc["coupling"]
    for key in ("L", "R", "S", "D"):
        if key not in cdoc:
            raise ModelError(f"coupling.{key} is missing")

    circ = None
    lnode = cdoc["L"]
    if isinstance(lnode, dict):
        if "circulant" not in lnode:
            raise ModelError("coupling.L object form must carry a 'circulant' array")
        row = lnode["circulant"]
        if not isinstance(row, list) or not row:
            raise ModelError("coupling.L.circulant must be a nonempty array of numbers")
        try:
            circ = CirculantSpec(tuple(float(x) for x in row))
        except (TypeError, ValueError):
            raise ModelError("coupling.L.circulant contains a non-numeric entry") from None
        L = circulant_matrix(circ)
    else:
        L = np.array(_matrix_field(lnode, "coupling.L"))

    try:
        coupling = Interconnection(
            L=L,
            R=np.array(_matrix_field(cdoc["R"], "coupling.R")),
            S=np.array(_matrix_field(cdoc["S"], "coupling.S")),
            D=np.array(_matrix_field(cdoc["D"], "coupling.D")),
        )
    except ValueError as exc:
        raise ModelError(f"coupling: {exc}") from None

    violations = validate_network(agents, coupling)
    if violations:
        raise ModelError("; ".join(violations))

    model = ModelFile(
        agents=agents,
        coupling=coupling,
        homogeneous_shorthand=has_shorthand,
        circulant=circ,
        canonical={},
    )
    model.canonical = serialize_model(model)
    return model


def _matrix_json(M) -> list[list[float]]:
    return [[float(x) for x in row] for row in np.atleast_2d(np.asarray(M))]


def serialize_model(model: ModelFile) -> dict:
    """Canonical JSON-ready form of the model (round-trips through parse)."""
    if model.homogeneous_shorthand:
        a = model.agents[0]
        agents_doc = {
            "agent": {"A": _matrix_json(a.A), "B": _matrix_json(a.B), "C": _matrix_json(a.C)},
            "count": len(model.agents),
        }
    else:
        agents_doc = {
            "agents": [
                {"A": _matrix_json(a.A), "B": _matrix_json(a.B), "C": _matrix_json(a.C)}
                for a in model.agents
            ]
        }
    if model.circulant is not None:
        l_doc = {"circulant": [float(x) for x in model.circulant.c]}
    else:
        l_doc = _matrix_json(model.coupling.L)
    doc = dict(agents_doc)
    doc["coupling"] = {
        "L": l_doc,
        "R": _matrix_json(model.coupling.R),
        "S": _matrix_json(model.coupling.S),
        "D": _matrix_json(model.coupling.D),
    }
    return doc


def model_digest(model: ModelFile) -> str:
    blob = json.dumps(model.canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _complex_dict(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _zero_report_dict(rep: ZeroReport) -> dict:
    return {
        "finite_zeros": [
            {"re": float(c.real), "im": float(c.imag), "multiplicity": mult}
            for c, mult in rep.zero_clusters()
        ],
        "normal_rank_pencil": rep.normal_rank_pencil,
        "normal_rank_tf": rep.normal_rank_tf,
        "has_infinite_zero": rep.has_infinite_zero,
        "has_origin_zero": rep.has_origin_zero,
        "diagnostics": {
            "method": rep.diagnostics.method,
            "det_degree": rep.diagnostics.det_degree,
            "seed": rep.diagnostics.seed,
            "cluster_tol": rep.diagnostics.cluster_tol,
            "multiplicities_heuristic": rep.diagnostics.multiplicities_heuristic,
            "confirmations": [
                {
                    "z": _complex_dict(c.z),
                    "multiplicity": c.multiplicity,
                    "rank": c.rank,
                    "normal_rank": c.normal_rank,
                    "sigma_ratio": c.sigma_ratio,
                    "confirmed": c.confirmed,
                }
                for c in rep.diagnostics.confirmations
            ],
            "notes": list(rep.diagnostics.notes),
        },
    }


def _match_dict(match) -> dict:
    return {
        "matched": match.matched,
        "max_error": match.max_error if np.isfinite(match.max_error) else None,
        "unmatched_left": [_complex_dict(z) for z in match.unmatched_left],
        "unmatched_right": [_complex_dict(z) for z in match.unmatched_right],
    }


def _homogeneous_network(model: ModelFile) -> HomogeneousNetwork:
    """Build the homogeneous view, requiring identical agent fractions."""
    fractions = []
    for i, agent in enumerate(model.agents, start=1):
        if agent.m != 1 or agent.p != 1:
            raise ApplicabilityError(
                f"homogeneous analysis requires SISO agents; agent {i} is "
                f"{agent.p}x{agent.m}"
            )
        fractions.append(siso_from_statespace(agent.A, agent.B, agent.C))
    g0 = fractions[0]
    for i, g in enumerate(fractions[1:], start=2):
        same_deg = g.degree == g0.degree and g.num.degree == g0.num.degree
        if not same_deg or not (
            np.allclose(g.den.coeffs, g0.den.coeffs, atol=1e-9, rtol=1e-9)
            and np.allclose(g.num.coeffs, g0.num.coeffs, atol=1e-9, rtol=1e-9)
        ):
            raise ApplicabilityError(
                f"homogeneous analysis requires identical agent transfer "
                f"functions; agent {i} differs from agent 1"
            )
    return HomogeneousNetwork(agent=g0, count=len(model.agents), coupling=model.coupling)


def _is_circulant(L: np.ndarray, tol: float = 1e-12) -> CirculantSpec | None:
    N = L.shape[0]
    if L.shape[1] != N:
        return None
    spec = CirculantSpec(tuple(float(x) for x in L[0]))
    scale = max(float(np.max(np.abs(L))), 1.0)
    if np.max(np.abs(circulant_matrix(spec) - L)) <= tol * scale:
        return spec
    return None


def run_command(cmd: str, model: ModelFile, options: Options) -> Report:
    """Dispatch one analysis command and assemble its report.

    Hypothesis violations and cross-check mismatches are recorded as
    findings (exit code 1), not exceptions; only input errors raise.
    """
    if cmd not in COMMANDS:
        raise ModelError(f"unknown command {cmd!r}")
    report = Report(
        command=cmd,
        model_digest=model_digest(model),
        options={
            "seed": options.seed,
            "tol": options.tol,
            "samples": options.samples,
            "T": options.T,
        },
        model=model.canonical,
        results={},
    )
    try:
        _DISPATCH[cmd](model, options, report)
    except (ApplicabilityError, HypothesisViolationError) as exc:
        report.findings.append(str(exc))
    return report


def _cmd_zeros(model: ModelFile, options: Options, report: Report) -> None:
    net = close_loop(model.agents, model.coupling)
    rep = invariant_zeros(
        *net.quadruple(), seed=options.seed, samples=options.samples, cluster_tol=options.tol
    )
    report.results["network"] = _zero_report_dict(rep)


def _cmd_homog(model: ModelFile, options: Options, report: Report) -> None:
    hn = _homogeneous_network(model)
    fast = homogeneous_zero_report(
        hn, seed=options.seed, samples=options.samples, cluster_tol=options.tol
    )
    net = close_loop(model.agents, model.coupling)
    direct = invariant_zeros(
        *net.quadruple(), seed=options.seed, samples=options.samples, cluster_tol=options.tol
    )
    match = match_zero_multisets(fast.finite_zeros, direct.finite_zeros, tol=options.tol)
    report.results["theorem_path"] = _zero_report_dict(fast)
    report.results["direct"] = _zero_report_dict(direct)
    report.results["match"] = _match_dict(match)
    if not match.matched:
        report.findings.append("theorem-path zeros disagree with the direct pencil engine")
    if fast.has_infinite_zero != direct.has_infinite_zero:
        report.findings.append("infinite-zero flags disagree between the two paths")


def _cmd_circulant(model: ModelFile, options: Options, report: Report) -> None:
    hn = _homogeneous_network(model)
    spec = model.circulant or _is_circulant(model.coupling.L)
    if spec is None:
        raise HypothesisViolationError(
            "circulant analysis requires a circulant coupling matrix L"
        )
    fast = circulant_zero_report(
        hn.agent, spec, model.coupling.R, model.coupling.S, model.coupling.D,
        seed=options.seed, cluster_tol=options.tol,
    )
    net = close_loop(model.agents, model.coupling)
    direct = invariant_zeros(
        *net.quadruple(), seed=options.seed, samples=options.samples, cluster_tol=options.tol
    )
    match = match_zero_multisets(fast.finite_zeros, direct.finite_zeros, tol=options.tol)
    report.results["circulant_path"] = _zero_report_dict(fast)
    report.results["direct"] = _zero_report_dict(direct)
    report.results["match"] = _match_dict(match)
    if not match.matched:
        report.findings.append("circulant-path zeros disagree with the direct pencil engine")


def _cmd_block(model: ModelFile, options: Options, report: Report) -> None:
    net = close_loop(model.agents, model.coupling)
    corr = correspondence_report(
        net, options.T, seed=options.seed, samples=options.samples, tol=options.tol
    )
    report.results["T"] = options.T
    report.results["unblocked"] = _zero_report_dict(corr.unblocked)
    report.results["blocked"] = _zero_report_dict(corr.blocked)
    report.results["nonzero_match"] = corr.nonzero_match
    report.results["origin_match"] = corr.origin_match
    report.results["infinity_match"] = corr.infinity_match
    report.results["minimal"] = corr.minimal
    report.results["unmatched_unblocked"] = [_complex_dict(z) for z in corr.unmatched_unblocked]
    report.results["unmatched_blocked"] = [_complex_dict(z) for z in corr.unmatched_blocked]
    if not corr.nonzero_match:
        report.findings.append("nonzero blocked zeros do not match T-th powers of unblocked zeros")
    for name, flag in (("origin", corr.origin_match), ("infinity", corr.infinity_match)):
        if flag is False:
            report.findings.append(f"{name}-zero flags disagree between blocked and unblocked")


def _cmd_design(model: ModelFile, options: Options, report: Report) -> None:
    c = model.coupling
    if c.m != 1 or c.p != 1:
        raise ApplicabilityError("design check requires a single external input and output")
    if np.max(np.abs(c.D)) != 0.0:
        raise ApplicabilityError("design check requires zero feedthrough D")
    chk = design_check(c.L, c.R, c.S)
    report.results["design"] = {
        "reachable": chk.reachable,
        "observable": chk.observable,
        "relative_degree": chk.relative_degree if chk.relative_degree is not None else "infinite",
        "zero_free": chk.zero_free,
        "agent_count": c.L.shape[0],
    }


def _cmd_verify(model: ModelFile, options: Options, report: Report) -> None:
    """Cross-verify every structural identity applicable to the model."""
    checks: list[dict] = []

    def record(name: str, applicable: bool, passed: bool | None, detail: str) -> None:
        checks.append(
            {"name": name, "applicable": applicable, "passed": passed, "detail": detail}
        )
        if applicable and passed is False:
            report.findings.append(f"verify: {name} failed ({detail})")

    net = close_loop(model.agents, model.coupling)
    direct = invariant_zeros(
        *net.quadruple(), seed=options.seed, samples=options.samples, cluster_tol=options.tol
    )
    report.results["network"] = _zero_report_dict(direct)

    conj = match_zero_multisets(
        direct.finite_zeros, [z.conjugate() for z in direct.finite_zeros], tol=options.tol
    )
    record(
        "conjugate_symmetry", True, conj.matched,
        "finite zeros of a real quadruple are closed under conjugation",
    )

    try:
        hn = _homogeneous_network(model)
    except ApplicabilityError:
        hn = None
    if hn is None:
        for name in (
            "homogeneous_transfer_identity",
            "zero_path_equivalence",
            "infinite_zero_equivalence",
            "normal_rank_equality",
            "pencil_rank_identity",
        ):
            record(name, False, None, "model is not homogeneous SISO")
    else:
        g = hn.agent
        radius = 1.0 + float(np.max(np.abs(np.linalg.eigvals(net.A_cl))))
        pts = sample_circle(radius, 5, options.seed + 101)
        worst = 0.0
        for z in pts:
            gamma = network_transfer_eval(net, z)
            phi = interconnection_transfer_eval(model.coupling, g.reciprocal_value(z))
            worst = max(worst, float(np.max(np.abs(gamma - phi)) / max(np.max(np.abs(phi)), 1e-12)))
        record(
            "homogeneous_transfer_identity", True, worst <= 1e-8,
            f"max relative deviation {worst:.3e} between the network transfer "
            f"function and the interconnection transfer function at reciprocal points",
        )

        fast = homogeneous_zero_report(
            hn, seed=options.seed, samples=options.samples, cluster_tol=options.tol
        )
        match = match_zero_multisets(fast.finite_zeros, direct.finite_zeros, tol=options.tol)
        record(
            "zero_path_equivalence", True, match.matched,
            f"{len(fast.finite_zeros)} theorem-path zeros vs "
            f"{len(direct.finite_zeros)} direct zeros",
        )
        record(
            "infinite_zero_equivalence", True,
            fast.has_infinite_zero == direct.has_infinite_zero,
            f"theorem path {fast.has_infinite_zero}, direct {direct.has_infinite_zero}",
        )
        record(
            "normal_rank_equality", True,
            fast.normal_rank_tf == direct.normal_rank_tf,
            f"interconnection {fast.normal_rank_tf}, network {direct.normal_rank_tf}",
        )

        N, n = hn.count, g.degree
        ok = True
        for z in sample_circle(radius, 10, options.seed + 202):
            lhs = numeric_rank(system_pencil(*net.quadruple(), z))
            qv, pv = complex(g.den(z)), complex(g.num(z))
            c = model.coupling
            poly_pencil = np.vstack(
                [
                    np.hstack([qv * np.eye(N) - pv * c.L, -pv * c.R]),
                    np.hstack([c.S, c.D]).astype(complex),
                ]
            )
            rhs = N * (n - 1) + numeric_rank(poly_pencil)
            if lhs != rhs:
                ok = False
                break
        record(
            "pencil_rank_identity", True, ok,
            "rank of the network pencil equals N(n-1) plus the rank of the "
            "polynomial interconnection pencil at sampled points",
        )

    spec = model.circulant or _is_circulant(model.coupling.L)
    c = model.coupling
    square_invertible = (
        c.D.shape[0] == c.D.shape[1] and numeric_rank(c.D) == c.D.shape[0]
    )
    if hn is not None and spec is not None and square_invertible:
        fast_c = circulant_zero_report(
            hn.agent, spec, c.R, c.S, c.D, seed=options.seed, cluster_tol=options.tol
        )
        match_c = match_zero_multisets(fast_c.finite_zeros, direct.finite_zeros, tol=options.tol)
        record(
            "circulant_consistency", True, match_c.matched,
            "circulant-path zeros match the direct engine",
        )
    else:
        record(
            "circulant_consistency", False, None,
            "requires a homogeneous model, circulant L and square invertible D",
        )

    corr = correspondence_report(
        net, options.T, seed=options.seed, samples=options.samples, tol=options.tol
    )
    record(
        "blocking_nonzero_correspondence", True, corr.nonzero_match,
        f"nonzero blocked zeros vs T-th powers at T={options.T}",
    )
    if corr.minimal:
        record(
            "blocking_origin_infinity", True,
            bool(corr.origin_match and corr.infinity_match),
            "origin and infinity flags agree between blocked and unblocked",
        )
    else:
        record(
            "blocking_origin_infinity", False, None,
            "unblocked quadruple is not minimal; flags not applicable",
        )

    blk = block_system(net, options.T)
    worst_blk = 0.0
    for z in sample_circle(1.0 + float(np.max(np.abs(np.linalg.eigvals(net.A_cl)))), 3, options.seed + 303):
        lhs = blocked_transfer_eval(blk, z**options.T)
        rhs = blocked_transfer_structured(net, options.T, z)
        worst_blk = max(
            worst_blk, float(np.max(np.abs(lhs - rhs)) / max(np.max(np.abs(lhs)), 1e-12))
        )
    record(
        "blocked_transfer_structure", True, worst_blk <= 1e-8,
        f"max relative deviation {worst_blk:.3e} between state-space and "
        f"structured blocked transfer evaluation",
    )

    if c.m == 1 and c.p == 1 and np.max(np.abs(c.D)) == 0.0:
        chk = design_check(c.L, c.R, c.S)
        int_rep = invariant_zeros(
            c.L, c.R, c.S, c.D, seed=options.seed, samples=options.samples, cluster_tol=options.tol
        )
        consistent = chk.zero_free == (len(int_rep.finite_zeros) == 0) if (
            chk.reachable and chk.observable
        ) else True
        record(
            "design_condition", True, consistent,
            f"zero_free={chk.zero_free}, direct interconnection zeros "
            f"{len(int_rep.finite_zeros)}",
        )
    else:
        record("design_condition", False, None, "requires scalar external ports and D = 0")

    report.results["checks"] = checks


_DISPATCH = {
    "zeros": _cmd_zeros,
    "homog": _cmd_homog,
    "circulant": _cmd_circulant,
    "block": _cmd_block,
    "design": _cmd_design,
    "verify": _cmd_verify,
}


def _zero_sets_for_output(report: Report) -> dict[str, list[tuple[complex, int]]]:
    sets = {}
    for key in ("network", "theorem_path", "circulant_path", "direct", "unblocked", "blocked"):
        node = report.results.get(key)
        if isinstance(node, dict) and "finite_zeros" in node:
            sets[key] = [
                (complex(e["re"], e["im"]), int(e["multiplicity"]))
                for e in node["finite_zeros"]
            ]
    return sets


def write_report(report: Report, path: str | None = None) -> None:
    """Serialize the report deterministically to a file or stdout."""
    text = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_csv(report: Report, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["set", "re", "im", "multiplicity"])
        for name, zeros in _zero_sets_for_output(report).items():
            for z, mult in zeros:
                writer.writerow([name, repr(z.real), repr(z.imag), mult])


def _render_plot(report: Report, path: str) -> None:
    from .plots import render_zero_map

    sets = {
        name: [z for z, mult in zeros for _ in range(mult)]
        for name, zeros in _zero_sets_for_output(report).items()
    }
    render_zero_map(sets, path, title=f"finite zeros ({report.command})")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="netzero",
        description="Invariant-zero analysis for networked discrete-time LTI systems.",
    )
    parser.add_argument("command", choices=COMMANDS, help="analysis to run")
    parser.add_argument("--model", required=True, help="path to the JSON model file")
    parser.add_argument("--T", type=int, default=2, help="block size for blocking commands")
    parser.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    parser.add_argument("--tol", type=float, default=CLUSTER_TOL, help="matching tolerance")
    parser.add_argument("--samples", type=int, default=7, help="normal-rank sample count")
    parser.add_argument("--out", default=None, help="report destination (default stdout)")
    parser.add_argument("--plot", default=None, help="render the zero map to this image file")
    parser.add_argument("--csv", default=None, help="write the zero sets to this CSV file")
    args = parser.parse_args(argv)

    options = Options(
        seed=args.seed, tol=args.tol, samples=args.samples, T=args.T,
        out=args.out, plot=args.plot, csv=args.csv,
    )
    try:
        model = parse_model(args.model)
    except ModelError as exc:
        print(f"netzero: input error: {exc}", file=sys.stderr)
        return 2
    if args.T < 1:
        print("netzero: input error: --T must be at least 1", file=sys.stderr)
        return 2

    report = run_command(args.command, model, options)
    try:
        write_report(report, options.out)
        if options.csv:
            _write_csv(report, options.csv)
        if options.plot:
            _render_plot(report, options.plot)
    except OSError as exc:
        print(f"netzero: output error: {exc}", file=sys.stderr)
        return 2
    return 0 if report.status == "ok" else 1


if __name__ == "__main__":
    sys.exit(main())
