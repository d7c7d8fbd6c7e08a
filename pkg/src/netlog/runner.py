"""Problem files in, JSON reports out."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from . import curves as cv
from . import exactness as ex
from . import modules as md
from . import pipeline as pl
from . import stability as st
from .field import FieldSpec
from .groebner import CapExceeded
from .poly import PolyError, PolyRing

TASK_KINDS = ("compute", "classify", "restrict", "stability", "cohomology", "recover-cubic")


class ProblemError(ValueError):
    """Input rejection (exit code 2)."""


@dataclass
class Flags:
    window: tuple = (-2, 6)
    verify_exactness: bool = False
    catalog: str | None = None
    jobs: int = 1

    def to_json(self):
        return {"degree_window": list(self.window), "verify_exactness": self.verify_exactness,
                "catalog": self.catalog}


@dataclass
class Problem:
    raw: dict
    ring: PolyRing
    pair: pl.CIPair | None
    tasks: list = field(default_factory=list)

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ProblemError("problem file must be a JSON object")
        try:
            fld = FieldSpec.from_json(data.get("field"))
            variables = tuple(data.get("variables") or ("x0", "x1", "x2", "x3"))
            ring = PolyRing(variables, fld)
            X = [ring.parse(f) for f in data.get("X", [])]
            Y = [ring.parse(g) for g in data.get("Y", [])]
        except (PolyError, ValueError, TypeError) as err:
            raise ProblemError(f"[parse] {err}") from err
        tasks = data.get("tasks", [])
        if not isinstance(tasks, list):
            raise ProblemError("[tasks] must be a list")
        for i, t in enumerate(tasks):
            if not isinstance(t, dict) or t.get("task") not in TASK_KINDS:
                raise ProblemError(f"[tasks] entry {i} has unknown task kind {t.get('task') if isinstance(t, dict) else t!r}")
        pair = pl.CIPair(ring, tuple(X), tuple(Y)) if X else None
        return cls(data, ring, pair, tasks)


def load_problem(path) -> Problem:
    with open(path) as fh:
        text = fh.read()
    return parse_problem(text, path)


def parse_problem(text, source="<input>") -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ProblemError(f"{source}:{err.lineno}:{err.colno}: malformed JSON: {err.msg}") from err
    return Problem.from_json(data)


# ------------------------------------------------------------------ task execution

class Context:
    """Lazily computed shared objects for one problem."""

    def __init__(self, problem: Problem, flags: Flags):
        self.problem = problem
        self.flags = flags
        self._cache = {}
        self._validated = False

    @property
    def pair(self) -> pl.CIPair:
        p = self.problem.pair
        if p is None:
            raise ProblemError("[X] the task needs a variety X")
        if not self._validated:
            p.validate()
            self._validated = True
        return p

    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def module(self, which):
        if which == "net":
            return self.get("net", lambda: pl.net_log_tangent(self.pair))
        if which == "reflexive":
            return self.get("refl", lambda: pl.reflexive_log_tangent(self.pair))
        raise ProblemError(f"[module] unknown module {which!r}")

    def catalog(self):
        return self.get("catalog", lambda: cv.load_catalog(self.flags.catalog))


def _window(task, flags):
    w = task.get("window")
    return tuple(w) if w else flags.window


def _sheaf_block(ctx, M, task, with_cohomology=True):
    pair = ctx.pair
    window = _window(task, ctx.flags)
    out = {"hilbert": M.hilbert(window).to_json()}
    if pair.dim_X == 2:
        rng = task.get("cohomology_range", [-1, 2]) if with_cohomology else None
        rep = pl.sheaf_report(pair, M, window, range(rng[0], rng[1] + 1) if rng else None)
        out["sheaf"] = rep.to_json()
        rank = rep.rank
    else:
        rank = pair.dim_X
    lf = md.is_locally_free(M, rank)
    out["locally_free"] = lf.locally_free
    if not lf.locally_free:
        try:
            out["singular_support"] = [p.to_json() for p in pl.non_free_points(M, rank)]
        except Exception as err:  # positive-dimensional support
            out["singular_support"] = str(err)
    return out


def task_compute(ctx: Context, task):
    pair = ctx.pair
    net = ctx.module("net")
    out = {"jacobian": [[str(p) for p in r] for r in pl.jacobian_map(pair).rows]}
    out["net"] = _sheaf_block(ctx, net, task)
    if task.get("bidegree") or _is_quadric(pair):
        out["net"]["c1_bidegree"] = list(cv.bidegree_c1(net))
    if pl.is_reduced_section(pair):
        refl = ctx.module("reflexive")
        out["reflexive"] = _sheaf_block(ctx, refl, task, with_cohomology=False)
        out["defect"] = str(refl.hilbert_polynomial() - net.hilbert_polynomial())
        out["tor1"] = str(pl.tor_defect(pair).hilbert_polynomial())
    else:
        out["reflexive"] = None
        out["notes"] = ["D is not reduced; no reflexive-hull identity is asserted"]
    return out


def _is_quadric(pair):
    return (pair.ring.nvars == 4 and pair.r == 1
            and pl.proportional(pair.X[0], st.quadric_equation(pair.ring)))


def task_classify(ctx: Context, task):
    ring = ctx.problem.ring
    F = ring.parse(task["F"]) if "F" in task else ctx.pair.X[0]
    H = ring.parse(task["H"]) if "H" in task else ctx.pair.Y[0]
    sec = pl.section_singularities(F, H, seed=task.get("seed", 0))
    out = sec.to_json()
    out["tangent_planes"] = [str(pl.tangent_plane(F, p.coords)) for p in sec.points if p.coords is not None]
    return out


def task_restrict(ctx: Context, task):
    cat = ctx.catalog()
    names = task.get("curves") or [task["curve"]]
    which = task.get("module", "reflexive")
    M = ctx.module(which)
    out = []
    for name in names:
        if name not in cat:
            raise ProblemError(f"[curve] unknown curve {name!r}")
        C = cat[name]
        if not C.lies_on(ctx.pair.X):
            raise ProblemError(f"[curve] {name} does not lie on X")
        in_D = C.lies_on(ctx.pair.Y) if ctx.pair.Y else None
        out.append({"curve": name, "module": which, "in_D": in_D,
                    "splitting": cv.restrict_split(M, C).to_json()})
    return out


def task_stability(ctx: Context, task):
    kind = task.get("kind", "gieseker-quadric")
    pair = ctx.pair
    if kind == "gieseker-quadric":
        if not _is_quadric(pair):
            raise ProblemError("[stability] the Gieseker scan expects X = V(x0*x3 - x1*x2)")
        v = st.gieseker_scan_quadric(ctx.module(task.get("module", "net")), _window(task, Flags(window=(-3, 3))))
        out = v.to_json()
        if v.witness is not None:
            out["witness_verified"] = st.verify_witness(ctx.module(task.get("module", "net")), v.witness)
        return out
    if kind == "log-character":
        r = st.log_character_test(ctx.module(task.get("module", "net")), pl.surface_data(pair))
        return r.to_json()
    if kind == "mu-evidence":
        cat = ctx.catalog()
        lines = [cat[n] for n in task.get("curves", [])] or [c for c in cat.values() if c.lies_on(pair.X)]
        res = st.mu_evidence_cubic(ctx.module("reflexive"), lines, pair.Y)
        return {"lines": [r.to_json() for r in res["lines"]], "h0": res["h0"], "global_flag": res["global_flag"]}
    raise ProblemError(f"[stability] unknown kind {kind!r}")


def task_cohomology(ctx: Context, task):
    M = ctx.module(task.get("module", "net"))
    t0, t1 = task.get("range", [-1, 3])
    tab = md.sheaf_cohomology(M, range(ctx.pair.dim_X + 1), range(t0, t1 + 1))
    return {"module": task.get("module", "net"), "range": [t0, t1], "table": tab.to_json()}


def task_recover(ctx: Context, task):
    ring = ctx.problem.ring
    Qs = [ring.parse(q) for q in task["quadrics"]]
    return st.recover_cubic_from_gradient(*Qs).to_json()


HANDLERS = {
    "compute": task_compute,
    "classify": task_classify,
    "restrict": task_restrict,
    "stability": task_stability,
    "cohomology": task_cohomology,
    "recover-cubic": task_recover,
}


@dataclass
class TaskOutcome:
    index: int
    task: dict
    status: str
    result: object = None
    error: str = ""
    seconds: float = 0.0


def run_task(ctx: Context, index, task) -> TaskOutcome:
    t = time.perf_counter()
    try:
        res = HANDLERS[task["task"]](ctx, task)
        return TaskOutcome(index, task, "ok", res, seconds=time.perf_counter() - t)
    except CapExceeded as err:
        return TaskOutcome(index, task, "cap", None, str(err), time.perf_counter() - t)
    except (ProblemError, pl.PairError, PolyError, cv.CurveError, st.StabilityError,
            md.ChernInconsistency, KeyError) as err:
        return TaskOutcome(index, task, "rejected", None, f"{type(err).__name__}: {err}", time.perf_counter() - t)


def _worker(args):
    raw, flags, index = args
    problem = Problem.from_json(raw)
    return run_task(Context(problem, flags), index, problem.tasks[index])


def run(problem: Problem, flags: Flags = None):
    """Execute every task; returns (report dict, exit code)."""
    flags = flags or Flags()
    t = time.perf_counter()
    ctx = Context(problem, flags)
    if flags.jobs > 1 and len(problem.tasks) > 1:
        with ProcessPoolExecutor(flags.jobs) as pool:
            outcomes = list(pool.map(_worker, [(problem.raw, flags, i) for i in range(len(problem.tasks))]))
    else:
        outcomes = [run_task(ctx, i, task) for i, task in enumerate(problem.tasks)]
    results, warnings, timing = [], [], []
    code = 0
    for o in sorted(outcomes, key=lambda o: o.index):
        rec = {"index": o.index, "task": o.task["task"], "status": o.status}
        if o.status == "ok":
            rec["result"] = o.result
            if o.task["task"] == "stability" and isinstance(o.result, dict) and o.result.get("verdict") == "inconclusive":
                warnings.append(f"task {o.index}: inconclusive verdict")
        else:
            rec["error"] = o.error
            warnings.append(f"task {o.index}: {o.error}")
            code = max(code, 3 if o.status == "cap" else 2)
        results.append(rec)
        timing.append({"index": o.index, "seconds": round(o.seconds, 3)})
    report = {
        "tool": "netlog",
        "version": __version__,
        "input": problem.raw,
        "flags": flags.to_json(),
        "results": results,
        "warnings": warnings,
    }
    if flags.verify_exactness and problem.pair is not None:
        try:
            checks = ex.check_pair(ctx.pair, flags.window)
            report["exactness"] = [c.to_json() for c in checks]
            if not all(c.ok for c in checks):
                warnings.append("exactness: some identities failed")
        except CapExceeded as err:
            warnings.append(f"exactness: {err}")
            code = max(code, 3)
        except pl.PairError as err:
            warnings.append(f"exactness: {err}")
            code = max(code, 2)
    report["timing"] = {"total_seconds": round(time.perf_counter() - t, 3), "tasks": timing}
    return report, code


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def dumps(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
