# services/report_orchestrator.py

from pathlib import Path
from typing import Dict, Optional, Sequence

from curvature.model import verify_one_dimensional
from hochschild.complexes import hochschild_complex
from hochschild.trace import certify_chain_map, induced_homology_map
from linalg.complex import HomologyDims
from linalg.oracle import dense_homology_dims, dense_rank
from linalg.sparse import rank
from linfty.ce import CEComplex
from operad.chains import insert_trees
from operad.l_complex import CONVENTIONS as SHIFT_CONVENTIONS
from operad.l_complex import build_L_complex, l_basis, shifted_component
from operad.strata import incidence, strata
from schemas.files import AlgebraFile, LInftyFile, ManifoldFile, PairedSpaceFile, file_digest, load_model
from schemas.report import ReportTable, RunReport
from services.homology_service import compute_homology
from trees.notation import format_tree, parse_tree
from trees.operations import enumerate_trees
from utils.exceptions import GuardRailError, InputValidationError
from utils.logger import get_logger
from utils.rationals import format_rational

logger = get_logger("report_orchestrator")

L_CONVENTIONS = [
    "cohomological grading: differentials raise degree by one",
    "a tree with k internal edges over s leaves sits in degree 2 - s + k",
    "Det(t) orientation: internal edges ordered by sorted cluster, sign of a splitting is (-1)^(position of the new cluster)",
]
CE_CONVENTIONS = [
    "letters s(x) of degree |x| - 1, words graded-symmetric",
    "l_i has degree 2 - i; d_tot = sum of all l_i dualized with decalage signs",
    "for an ungraded Lie algebra a word of length k sits in degree -k",
]
HH_CONVENTIONS = [
    "Hochschild degree m stored in cohomological degree -m; table shows m",
    "b(a_0|...|a_m) = sum (-1)^i (..|a_i a_(i+1)|..) + (-1)^m (a_m a_0|a_1|..)",
    "cyclic-quotient: coinvariants of t = (-1)^m rotation",
]


def _check_guard(value: int, limit: int, what: str):
    if value > limit:
        raise GuardRailError(f"{what} {value} exceeds the limit {limit}", details="raise the corresponding --max flag")


def _homology_table(title: str, dims: HomologyDims, label: str = "degree") -> ReportTable:
    rows = [[str(d), str(v), "truncated" if d in dims.truncated else ""] for d, v in sorted(dims.dims.items())]
    return ReportTable(title=title, columns=[label, "dim", "flag"], rows=rows)


def _inputs(*paths) -> Dict[str, str]:
    return {str(p): file_digest(p) for p in paths if p is not None}


# --- trees ---

def trees_enumerate(leaves: Sequence[str], k: int, max_arity: int) -> RunReport:
    _check_guard(len(leaves), max_arity, "Arity")
    trees = enumerate_trees(leaves, k)
    return RunReport(
        command=f"trees enumerate {' '.join(leaves)} --edges {k}",
        values={"count": str(len(trees))},
        tables=[ReportTable(title="trees", columns=["tree"], rows=[[format_tree(t)] for t in trees])],
    )


def trees_compose(left: str, label: str, right: str) -> RunReport:
    t1, t2 = parse_tree(left), parse_tree(right)
    result, sign = insert_trees(t1, label, t2)
    return RunReport(
        command=f"trees compose {left} {label} {right}",
        values={"tree": format_tree(result), "orientation sign": str(sign), "internal edges": str(result.internal_edges)},
    )


# --- L(s) ---

def loperad_build(s: int, max_arity: int, oracle: bool = False) -> RunReport:
    _check_guard(s, max_arity, "Arity")
    complex_ = build_L_complex(s)
    basis = l_basis(s)
    rows = []
    for d in complex_.degrees:
        k = d - 2 + s
        rows.append([str(d), str(k), str(complex_.dim(d)), str(len(complex_.differential(d).entries))])
    report = RunReport(
        command=f"loperad build --arity {s}" + (" --oracle" if oracle else ""),
        conventions=list(L_CONVENTIONS),
        values={"square zero": "verified", "trees": str(sum(len(v) for v in basis.values()))},
        tables=[ReportTable(title=f"L({s})", columns=["degree", "edges", "dim", "nonzeros"], rows=rows)],
    )
    if oracle:
        mismatched = [d for d in complex_.degrees if rank(complex_.differential(d)) != dense_rank(complex_.differential(d))]
        report.values["dense oracle"] = "agrees" if not mismatched else "DISAGREES in degrees " + ", ".join(map(str, mismatched))
        if mismatched:
            report.status = "failed"
    return report


async def loperad_homology(
    s: int,
    max_arity: int,
    oracle: bool = False,
    n: Optional[int] = None,
    convention: str = "section",
    threads: Optional[int] = None,
) -> RunReport:
    _check_guard(s, max_arity, "Arity")
    complex_ = build_L_complex(s)
    dims = await compute_homology(complex_, threads)
    report = RunReport(
        command=f"loperad homology --arity {s}" + (" --oracle" if oracle else "")
        + (f" --n {n} --convention {convention}" if n is not None else ""),
        conventions=list(L_CONVENTIONS),
        values={"total dimension": str(dims.total)},
        tables=[_homology_table(f"H(L({s}))", dims)],
    )
    if n is not None:
        component = shifted_component(s, n, convention)
        report.conventions.append(
            f"shift convention '{convention}' (of {', '.join(SHIFT_CONVENTIONS)}): degrees move by {component.shift}, "
            f"action twisted by sgn^{component.twist_power}"
        )
        shifted = HomologyDims({d + component.shift: v for d, v in dims.dims.items()})
        report.tables.append(_homology_table(f"H(L({s})) shifted for n={n}", shifted))
    if oracle:
        reference = dense_homology_dims(complex_)
        agrees = reference.dims == dims.dims
        report.values["dense oracle"] = "agrees" if agrees else "DISAGREES"
        if not agrees:
            logger.error(f"Sparse and dense homology of L({s}) disagree: {dims.dims} vs {reference.dims}")
            report.status = "failed"
    return report


# --- Fulton-MacPherson strata ---

def fm_strata(leaves: Sequence[str], n: int, max_arity: int) -> RunReport:
    _check_guard(len(leaves), max_arity, "Arity")
    table = strata(leaves, n)
    rows = [[format_tree(st.tree), str(st.dim), str(st.codim)] for st in table]
    return RunReport(
        command=f"fm strata {' '.join(leaves)} --n {n}",
        conventions=["open stratum has codimension 0; codimension equals the number of internal edges"],
        values={"count": str(len(table))},
        tables=[ReportTable(title=f"strata of F_{n}", columns=["tree", "dim", "codim"], rows=rows)],
    )


def fm_incidence(left: str, right: str) -> RunReport:
    t, t2 = parse_tree(left), parse_tree(right)
    return RunReport(
        command=f"fm incidence {left} {right}",
        values={"incident": "yes" if incidence(t, t2) else "no"},
    )


# --- Chevalley-Eilenberg ---

async def ce_homology(path: Path, cutoff: int, max_basis: int, threads: Optional[int] = None) -> RunReport:
    g = load_model(LInftyFile, path).to_structure()
    ce = CEComplex(g, cutoff, max_basis=max_basis)
    raw = await compute_homology(ce.complex, threads)
    dims = HomologyDims(raw.dims, ce.truncated_degrees)
    return RunReport(
        command=f"ce homology --lie {path} --cutoff {cutoff}",
        inputs=_inputs(path),
        conventions=list(CE_CONVENTIONS),
        values={"generators": str(len(g.space)), "max arity": str(g.max_arity)},
        tables=[_homology_table("H(CE)", dims)],
        truncated_degrees=sorted(dims.truncated),
    )


# --- Hochschild ---

async def hochschild_homology(
    path: Path, max_degree: int, variant: str, max_basis: int, limit: int, threads: Optional[int] = None
) -> RunReport:
    _check_guard(max_degree, limit, "Degree")
    A = load_model(AlgebraFile, path).to_algebra()
    complex_, _ = hochschild_complex(A, max_degree, variant, max_basis)
    dims = (await compute_homology(complex_, threads)).negated()
    return RunReport(
        command=f"hochschild homology --algebra {path} --max-degree {max_degree} --variant {variant}",
        inputs=_inputs(path),
        conventions=list(HH_CONVENTIONS),
        values={"dim A": str(A.dim)},
        tables=[_homology_table(f"HH ({variant})", dims, label="m")],
        truncated_degrees=sorted(dims.truncated),
    )


# --- trace ---

def trace_certify(path: Path, max_degree: int, variant: str, limit: int, max_basis: Optional[int] = None) -> RunReport:
    _check_guard(max_degree, limit, "Degree")
    algebra_file = load_model(AlgebraFile, path)
    certificate = certify_chain_map(algebra_file.to_algebra(), max_degree, variant, algebra_file.name, max_basis)
    rows = []
    for v in certificate.verdicts:
        rows.append([str(v.k), v.status, format_rational(v.ratio) if v.ratio is not None else ""])
    report = RunReport(
        command=f"trace certify --algebra {path} --max-degree {max_degree} --variant {variant}",
        inputs=_inputs(path),
        conventions=list(HH_CONVENTIONS) + [
            "eps_k(x_1^...^x_k) = sum over sigma of sgn(sigma) (x_sigma(1)|...|x_sigma(k)), in Hochschild degree k-1",
            "ratio r_k: b eps_k = r_k eps_(k-1) d_CE; c_1 = 1, c_k = c_(k-1) / r_k",
        ],
        tables=[ReportTable(title="verdicts", columns=["k", "status", "ratio"], rows=rows)],
        messages=certificate.render().splitlines(),
    )
    for k, c in sorted(certificate.normalization.items()):
        report.values[f"c_{k}"] = format_rational(c)
    if not certificate.success:
        report.status = "failed"
        report.values["failing degree"] = str(certificate.failing_degree)
    return report


def trace_induced(path: Path, max_degree: int, variant: str, limit: int, max_basis: Optional[int] = None) -> RunReport:
    _check_guard(max_degree, limit, "Degree")
    algebra_file = load_model(AlgebraFile, path)
    A = algebra_file.to_algebra()
    certificate = certify_chain_map(A, max_degree, variant, algebra_file.name, max_basis)
    components = induced_homology_map(A, max_degree, variant, certificate, max_basis)
    rows = [[str(c.k), str(c.source_dim), str(c.target_dim), str(c.rank)] for c in components]
    return RunReport(
        command=f"trace induced --algebra {path} --max-degree {max_degree} --variant {variant}",
        inputs=_inputs(path),
        conventions=list(HH_CONVENTIONS),
        values={f"c_{k}": format_rational(c) for k, c in sorted(certificate.normalization.items())},
        tables=[ReportTable(title="H_k(CE) -> HH_(k-1)", columns=["k", "source", "target", "rank"], rows=rows)],
    )


# --- curvature ---

def weyl_verify(
    n: int, v_path: Path, manifold_path: Path, cutoff: Optional[int], max_basis: int
) -> RunReport:
    V = load_model(PairedSpaceFile, v_path).to_paired_space()
    M = load_model(ManifoldFile, manifold_path).to_manifold()
    if M.n != n:
        raise InputValidationError(f"Manifold file has dimension {M.n}, --n is {n}")
    result = verify_one_dimensional(V, M, cutoff=cutoff, max_basis=max_basis)
    rows = [[str(d), str(v)] for d, v in sorted(result.dims.items())]
    values = {
        "regime": result.regime,
        "status": result.status,
        "total dimension": str(result.total),
        "alpha": str(result.alpha),
        "beta": str(result.beta),
        "predicted location": str(result.predicted_location),
        "parallelizable": "yes" if M.parallelizable else "no",
    }
    if result.location is not None:
        values["location"] = str(result.location)
        values["homological location"] = str(result.homological_location)
    if result.window is not None:
        values["window"] = f"[{result.window[0]}, {result.window[1]}]"
    if result.cutoffs is not None:
        values["cutoffs"] = f"{result.cutoffs[0]}, {result.cutoffs[1]}"
        values["reliable word lengths"] = f"<= {result.reliable_length}"
    report = RunReport(
        command=f"weyl verify --n {n} --v {v_path} --manifold {manifold_path}"
        + (f" --cutoff {cutoff}" if cutoff is not None else ""),
        inputs=_inputs(v_path, manifold_path),
        conventions=list(result.conventions),
        values=values,
        tables=[
            ReportTable(title="W generators", columns=["name", "degree"], rows=[[nm, str(d)] for nm, d in result.generators]),
            ReportTable(title="curvature cohomology", columns=["degree", "dim"], rows=rows),
        ],
    )
    if result.status == "inconclusive":
        report.status = "inconclusive"
    elif not result.one_dimensional:
        report.status = "failed"
    return report
