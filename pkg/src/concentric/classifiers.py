"""k-NN, the k-NN ensemble, and the iterative pure-interval classifiers.

The iterative classifiers share one engine (the generalized iterative
driver): each iteration applies a node classifier to the still-unclassified
cases, emits rules covering value ranges that are pure for one class, and
recurses on the remaining overlap cases.  The single-attribute node
classifier reads values straight off one attribute; the linear node
classifier reads them off a fitted projection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import DataError, DomainError

UNCLASSIFIED = "unclassified"


def euclidean(query: np.ndarray, refs: np.ndarray) -> np.ndarray:
    return np.sqrt(((refs - query) ** 2).sum(axis=1))


# ---------------------------------------------------------------------------
# k-NN


@dataclass
class KnnModel:
    k: int
    points: np.ndarray
    labels: tuple
    ids: tuple
    metric: object = None  # metric(query, refs) -> distances; default Euclidean

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.k < 1 or self.k % 2 == 0:
            raise DomainError("k must be an odd count >= 1")
        if self.k > len(self.points):
            raise DomainError("k exceeds reference count")

    @classmethod
    def fit(cls, dataset: Dataset, k: int, metric=None) -> "KnnModel":
        return cls(
            k=k,
            points=dataset.norm_matrix,
            labels=dataset.labels,
            ids=dataset.ids,
            metric=metric,
        )


def knn_classify(model: KnnModel, query) -> tuple:
    """Majority class among the k nearest references.

    Distance ties break toward the lower case id; vote ties go to the
    class of the nearer neighbor.  Returns (label, neighbor ids ordered
    by distance).
    """
    query = np.asarray(getattr(query, "norm", query), dtype=float)
    if query.shape[0] != model.points.shape[1]:
        raise DomainError("query dimensionality does not match references")
    metric = model.metric or euclidean
    dists = metric(query, model.points)
    order = np.lexsort((model.ids, dists))[: model.k]
    neighbor_ids = [int(model.ids[i]) for i in order]
    neighbor_labels = [model.labels[i] for i in order]
    counts: dict = {}
    for lab in neighbor_labels:
        counts[lab] = counts.get(lab, 0) + 1
    top = max(counts.values())
    winners = {lab for lab, c in counts.items() if c == top}
    if len(winners) == 1:
        label = winners.pop()
    else:
        label = next(lab for lab in neighbor_labels if lab in winners)
    return label, neighbor_ids


# ---------------------------------------------------------------------------
# cross-validation


@dataclass
class CvResult:
    model_id: str
    fold_accuracies: list
    folds: int
    seed: int

    @property
    def mean(self) -> float:
        return float(np.mean(self.fold_accuracies))

    @property
    def std(self) -> float:
        return float(np.std(self.fold_accuracies))

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "fold_accuracies": [float(a) for a in self.fold_accuracies],
            "mean": self.mean,
            "std": self.std,
            "folds": self.folds,
            "seed": self.seed,
        }


def stratified_folds(labels, folds: int, seed: int = 0) -> np.ndarray:
    """Deterministic per-class round-robin fold assignment.

    If the smallest class has fewer cases than requested, the fold count
    reduces to that size (recorded by the caller through the array's
    max+1).
    """
    if folds < 2:
        raise DomainError("folds must be >= 2")
    labels = list(labels)
    class_order = list(dict.fromkeys(labels))
    smallest = min(labels.count(lab) for lab in class_order)
    folds = min(folds, smallest)
    if folds < 2:
        raise DomainError("every class needs at least 2 cases for cross-validation")
    rng = np.random.Generator(np.random.PCG64(seed))
    assignment = np.empty(len(labels), dtype=int)
    for lab in class_order:
        idx = np.array([i for i, l in enumerate(labels) if l == lab])
        rng.shuffle(idx)
        for j, i in enumerate(idx):
            assignment[i] = j % folds
    return assignment


def cross_validate(
    dataset: Dataset,
    family,
    folds: int = 10,
    seed: int = 0,
    fold_ids: np.ndarray | None = None,
) -> CvResult:
    """Stratified k-fold accuracy for one model family.

    family must expose model_id and fit(points, labels, ids) returning a
    predict(points) -> labels callable.  Passing fold_ids reuses one fold
    partition across families so comparisons stay paired.
    """
    if fold_ids is None:
        fold_ids = stratified_folds(dataset.labels, folds, seed)
    n_folds = int(fold_ids.max()) + 1
    points, labels = dataset.norm_matrix, np.array(dataset.labels)
    accs = []
    for f in range(n_folds):
        test = fold_ids == f
        train = ~test
        predict = family.fit(
            points[train],
            tuple(labels[train]),
            tuple(np.array(dataset.ids)[train]),
        )
        pred = predict(points[test])
        accs.append(float(np.mean(np.array(pred) == labels[test])))
    return CvResult(family.model_id, accs, n_folds, seed)


@dataclass
class KnnFamily:
    k: int
    metric: object = None

    @property
    def model_id(self) -> str:
        return f"knn-{self.k}"

    def fit(self, points, labels, ids):
        model = KnnModel(self.k, points, labels, ids, self.metric)

        def predict(queries):
            return [knn_classify(model, q)[0] for q in np.asarray(queries)]

        return predict


# ---------------------------------------------------------------------------
# k-NN ensemble


@dataclass
class EnsembleModel:
    member_ks: list
    models: dict  # k -> KnnModel trained on the full dataset
    copeland: dict  # k -> pairwise-win score
    cv_table: list  # CvResult dicts for every candidate k
    dropped_ks: list
    greedy_trace: list
    accuracy: float
    folds: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "member_ks": list(self.member_ks),
            "copeland": {str(k): v for k, v in self.copeland.items()},
            "cv_table": list(self.cv_table),
            "dropped_ks": list(self.dropped_ks),
            "greedy_trace": [float(a) for a in self.greedy_trace],
            "accuracy": float(self.accuracy),
            "folds": self.folds,
            "seed": self.seed,
        }


def _vote(votes_by_k: dict, copeland: dict):
    """Majority vote; ties go to the best-Copeland member, then lower k."""
    counts: dict = {}
    for lab in votes_by_k.values():
        counts[lab] = counts.get(lab, 0) + 1
    top = max(counts.values())
    winners = {lab for lab, c in counts.items() if c == top}
    if len(winners) == 1:
        return winners.pop()
    candidates = [
        (-copeland[k], k, lab) for k, lab in votes_by_k.items() if lab in winners
    ]
    return min(candidates)[2]


def ensemble_predict(model: EnsembleModel, query) -> tuple:
    votes = {k: knn_classify(model.models[k], query)[0] for k in model.member_ks}
    label = _vote(votes, model.copeland)
    return label, votes


def greedy_grow(ordered_ids, evaluate):
    """Grow a member set from the two best while accuracy strictly improves.

    evaluate(tuple_of_ids) -> accuracy.  Returns (members, accuracy trace).
    """
    if len(ordered_ids) < 2:
        raise DataError("fewer than two surviving models")
    members = list(ordered_ids[:2])
    trace = [evaluate(tuple(members))]
    for candidate in ordered_ids[2:]:
        acc = evaluate(tuple(members + [candidate]))
        if acc > trace[-1]:
            members.append(candidate)
            trace.append(acc)
        else:
            break
    return members, trace


def knne_train(
    dataset: Dataset,
    K: int = 21,
    folds: int = 10,
    seed: int = 0,
    instability_factor: float = 2.0,
) -> EnsembleModel:
    """k-NN ensemble: paired CV sweep over odd k, stability filter,
    accuracy-ordered greedy growth, Copeland tie-breaking.

    Model k drops out when its fold-accuracy standard deviation exceeds
    instability_factor times the median over all candidates.
    """
    if K < 3:
        raise DomainError("K must be >= 3")
    fold_ids = stratified_folds(dataset.labels, folds, seed)
    n_folds = int(fold_ids.max()) + 1
    min_train = min(
        int((fold_ids != f).sum()) for f in range(n_folds)
    )
    ks = [k for k in range(1, K + 1, 2) if k <= min_train]
    if len(ks) < 2:
        raise DataError("fewer than two candidate models fit the folds")

    labels = np.array(dataset.labels)
    points = dataset.norm_matrix
    results: dict = {}
    oof: dict = {}  # k -> out-of-fold prediction per case
    for k in ks:
        family = KnnFamily(k)
        results[k] = cross_validate(dataset, family, folds, seed, fold_ids)
        preds = np.empty(len(labels), dtype=object)
        for f in range(n_folds):
            test = fold_ids == f
            train = ~test
            model = KnnModel(
                k,
                points[train],
                tuple(labels[train]),
                tuple(np.array(dataset.ids)[train]),
            )
            idx = np.where(test)[0]
            for i in idx:
                preds[i] = knn_classify(model, points[i])[0]
        oof[k] = preds

    stds = [results[k].std for k in ks]
    cutoff = instability_factor * float(np.median(stds))
    survivors = [k for k in ks if results[k].std <= cutoff]
    dropped = [k for k in ks if k not in survivors]
    if len(survivors) < 2:
        raise DataError("fewer than two surviving models")
    survivors.sort(key=lambda k: (-results[k].mean, k))

    # Copeland: a model wins a pairwise comparison when its validation
    # (cross-validated) accuracy is higher; score = wins - losses.
    copeland = {}
    for k in survivors:
        score = 0
        for other in survivors:
            if other == k:
                continue
            diff = results[k].mean - results[other].mean
            score += (diff > 0) - (diff < 0)
        copeland[k] = score

    def evaluate(member_ks: tuple) -> float:
        accs = []
        for f in range(n_folds):
            test = np.where(fold_ids == f)[0]
            hits = 0
            for i in test:
                votes = {k: oof[k][i] for k in member_ks}
                if _vote(votes, copeland) == labels[i]:
                    hits += 1
            accs.append(hits / len(test))
        return float(np.mean(accs))

    members, trace = greedy_grow(survivors, evaluate)
    models = {k: KnnModel.fit(dataset, k) for k in members}
    return EnsembleModel(
        member_ks=members,
        models=models,
        copeland=copeland,
        cv_table=[results[k].to_dict() for k in ks],
        dropped_ks=dropped,
        greedy_trace=trace,
        accuracy=trace[-1],
        folds=n_folds,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# iterative pure-interval classifiers


@dataclass(frozen=True)
class Rule:
    form: str  # interval | lower | upper | linear
    label: str
    iteration: int
    support: int
    rule_id: int
    attr: int | None = None
    coeffs: tuple | None = None
    t1: float | None = None
    t2: float | None = None

    def __post_init__(self):
        if self.form == "interval" and not self.t1 <= self.t2:
            raise DomainError("interval rule needs t1 <= t2")
        if self.form == "linear" and (
            self.coeffs is None or not any(c != 0 for c in self.coeffs)
        ):
            raise DomainError("linear rule needs a nonzero coefficient")

    def projection(self, values: np.ndarray) -> float:
        if self.form == "linear":
            return float(np.dot(self.coeffs, values))
        return float(values[self.attr])

    def matches(self, values: np.ndarray) -> bool:
        v = self.projection(values)
        if self.form == "lower":
            return v >= self.t1
        if self.form == "upper":
            return v <= self.t2
        lo_ok = self.t1 is None or v >= self.t1
        hi_ok = self.t2 is None or v <= self.t2
        return lo_ok and hi_ok

    def to_dict(self) -> dict:
        return {
            "form": self.form,
            "label": self.label,
            "iteration": self.iteration,
            "support": self.support,
            "rule_id": self.rule_id,
            "attr": self.attr,
            "coeffs": [float(c) for c in self.coeffs] if self.coeffs else None,
            "t1": self.t1,
            "t2": self.t2,
        }


@dataclass
class IterationRecord:
    iteration: int
    kind: str
    rule_ids: list
    covered_ids: list
    remaining: int

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "kind": self.kind,
            "rule_ids": list(self.rule_ids),
            "covered_ids": list(self.covered_ids),
            "remaining": self.remaining,
        }


@dataclass
class IterModel:
    rules: list
    assignments: dict  # case id -> rule id
    overlap_ids: list
    overlap_trace: list  # |OL_t| after each iteration
    iterations: int
    converged: bool
    records: list
    warnings: list
    classes: list

    def coverage(self) -> float:
        total = len(self.assignments) + len(self.overlap_ids)
        return len(self.assignments) / total if total else 0.0

    def to_dict(self) -> dict:
        return {
            "rules": [r.to_dict() for r in self.rules],
            "assignments": {str(k): v for k, v in sorted(self.assignments.items())},
            "overlap_ids": list(self.overlap_ids),
            "overlap_trace": list(self.overlap_trace),
            "iterations": self.iterations,
            "converged": self.converged,
            "records": [r.to_dict() for r in self.records],
            "warnings": list(self.warnings),
            "classes": list(self.classes),
        }


@dataclass(frozen=True)
class GICConfig:
    kinds: tuple = ("sac",)
    i_max: int | None = None  # None runs until the natural stop
    rho: tuple = (1.0,)
    min_region: float = 0.05

    def __post_init__(self):
        kinds = tuple(self.kinds) if not isinstance(self.kinds, str) else (self.kinds,)
        object.__setattr__(self, "kinds", kinds)
        rho = (self.rho,) if isinstance(self.rho, (int, float)) else tuple(self.rho)
        object.__setattr__(self, "rho", rho)
        if not self.kinds:
            raise DomainError("at least one classifier kind required")
        for kind in self.kinds:
            if kind not in ("sac", "linear"):
                raise DomainError(f"unknown classifier kind {kind!r}")
        if self.i_max is not None and self.i_max < 1:
            raise DomainError("i_max must be >= 1")
        for r in self.rho:
            if not 0.0 < r <= 1.0:
                raise DomainError("rho must be in (0, 1]")
        if not 0.0 <= self.min_region < 1.0:
            raise DomainError("min_region must be in [0, 1)")

    def kind_at(self, iteration: int) -> str:
        return self.kinds[(iteration - 1) % len(self.kinds)]

    def rho_at(self, iteration: int) -> float:
        return self.rho[(iteration - 1) % len(self.rho)]


@dataclass
class RunSpec:
    """One pure run over sorted distinct values, ready to become a rule."""

    member_rows: list  # row indices into the current working set
    label: str
    form: str
    t1: float | None
    t2: float | None


def _pure_runs(values: np.ndarray, labels, min_cases: float, rho: float) -> list:
    """Maximal single-class runs over the sorted distinct values.

    Interior runs produce interval bounds at midpoints between adjacent
    distinct values; runs touching an extreme become one-sided.  A run
    covering every distinct value gets a lower bound half a minimal gap
    below its smallest value.  With rho < 1 a pure core absorbs adjacent
    impure values while the majority fraction stays at or above rho.
    """
    order = np.argsort(values, kind="stable")
    distinct: list = []
    rows_by_value: list = []
    for row in order:
        v = values[row]
        if distinct and v == distinct[-1]:
            rows_by_value[-1].append(row)
        else:
            distinct.append(v)
            rows_by_value.append([row])
    m = len(distinct)
    value_label: list = []
    for rows in rows_by_value:
        labs = {labels[r] for r in rows}
        value_label.append(labs.pop() if len(labs) == 1 else None)

    cores = []
    i = 0
    while i < m:
        if value_label[i] is None:
            i += 1
            continue
        j = i
        while j + 1 < m and value_label[j + 1] == value_label[i]:
            j += 1
        cores.append((i, j, value_label[i]))
        i = j + 1

    claimed = [False] * m
    for i, j, _ in cores:
        for t in range(i, j + 1):
            claimed[t] = True

    runs = []
    for i, j, label in sorted(
        cores, key=lambda c: -sum(len(rows_by_value[t]) for t in range(c[0], c[1] + 1))
    ):
        lo, hi = i, j
        if rho < 1.0:
            # absorb neighbors while the run keeps at least rho majority
            def counts(a, b):
                good = bad = 0
                for t in range(a, b + 1):
                    for r in rows_by_value[t]:
                        if labels[r] == label:
                            good += 1
                        else:
                            bad += 1
                return good, bad

            while True:
                extended = False
                for nxt in (lo - 1, hi + 1):
                    if not 0 <= nxt < m or claimed[nxt]:
                        continue
                    a, b = min(lo, nxt), max(hi, nxt)
                    good, bad = counts(a, b)
                    if good / (good + bad) >= rho:
                        lo, hi = a, b
                        claimed[nxt] = True
                        extended = True
                        break
                if not extended:
                    break
        member_rows = [r for t in range(lo, hi + 1) for r in rows_by_value[t]]
        if len(member_rows) < min_cases or not member_rows:
            continue
        at_min, at_max = lo == 0, hi == m - 1
        if at_min and at_max:
            if m >= 2:
                gap = min(b - a for a, b in zip(distinct, distinct[1:]))
            else:
                gap = 1.0
            runs.append(RunSpec(member_rows, label, "lower", distinct[lo] - gap / 2, None))
        elif at_min:
            t2 = 0.5 * (distinct[hi] + distinct[hi + 1])
            runs.append(RunSpec(member_rows, label, "upper", None, t2))
        elif at_max:
            t1 = 0.5 * (distinct[lo - 1] + distinct[lo])
            runs.append(RunSpec(member_rows, label, "lower", t1, None))
        else:
            t1 = 0.5 * (distinct[lo - 1] + distinct[lo])
            t2 = 0.5 * (distinct[hi] + distinct[hi + 1])
            runs.append(RunSpec(member_rows, label, "interval", t1, t2))
    return runs


def _sac_specs(points, labels, min_cases, rho):
    """One SAC iteration: pure runs over every attribute."""
    specs = []
    for attr in range(points.shape[1]):
        for run in _pure_runs(points[:, attr], labels, min_cases, rho):
            specs.append((attr, None, run))
    return specs


def _centroid_directions(points, labels):
    classes = list(dict.fromkeys(labels))
    labels_arr = np.array(labels)
    centroids = {lab: points[labels_arr == lab].mean(axis=0) for lab in classes}
    directions = []
    for i, a in enumerate(classes):
        for b in classes[i + 1 :]:
            d = centroids[a] - centroids[b]
            if np.any(d != 0):
                directions.append(d)
    return directions


def _separating_direction(points, labels):
    """Direction that strictly isolates the lexicographically largest vector.

    The lex-max distinct vector is an extreme point of the working set's
    convex hull, so a linear program can always separate it with margin;
    projecting onto that direction puts its cases alone at the top, which
    guarantees one more rule on duplicate-free data.
    """
    from scipy.optimize import linprog

    distinct = np.unique(points, axis=0)
    if len(distinct) == 1:
        return None
    order = np.lexsort(tuple(distinct[:, j] for j in reversed(range(points.shape[1]))))
    vstar = distinct[order[-1]]
    others = distinct[~np.all(distinct == vstar, axis=1)]
    A_ub = -(vstar - others)
    b_ub = -np.ones(len(others))
    n = points.shape[1]
    res = linprog(
        c=np.zeros(n),
        A_ub=A_ub,
        b_ub=b_ub,
        bounds=[(None, None)] * n,
        method="highs",
    )
    if not res.success:
        return None
    return res.x


def _extreme_runs(values, labels, min_cases, rho):
    """Pure runs touching an end of the sorted projection.

    A linear rule carries one threshold, so an iteration can only peel
    the projection's extreme pure stretches; interior pure stretches
    wait for a later iteration with its own direction.
    """
    return [
        run
        for run in _pure_runs(values, labels, min_cases, rho)
        if run.form in ("lower", "upper")
    ]


def _linear_specs(points, labels, min_cases, rho):
    """One linear iteration: best centroid-pair projection, then single
    attributes, then the guaranteed separating direction."""
    candidate_sets = [_centroid_directions(points, labels)]
    candidate_sets.append([np.eye(points.shape[1])[j] for j in range(points.shape[1])])
    for directions in candidate_sets:
        best = None
        for u in directions:
            runs = _extreme_runs(points @ u, labels, min_cases, rho)
            covered = sum(len(r.member_rows) for r in runs)
            if covered and (best is None or covered > best[0]):
                best = (covered, u, runs)
        if best is not None:
            _, u, runs = best
            return [(None, u, run) for run in runs]
    u = _separating_direction(points, labels)
    if u is None:
        return []
    runs = _extreme_runs(points @ u, labels, min_cases, rho)
    return [(None, u, run) for run in runs]


def _route_cross_class_duplicates(dataset: Dataset):
    """Identical vectors under different labels can never separate linearly."""
    groups: dict = {}
    for i, case in enumerate(dataset.cases):
        groups.setdefault(case.norm.tobytes(), []).append(i)
    dup_rows = []
    for rows in groups.values():
        if len({dataset.labels[r] for r in rows}) > 1:
            dup_rows.extend(rows)
    return sorted(dup_rows)


def gic_run(dataset: Dataset, config: GICConfig | None = None) -> IterModel:
    """Generalized iterative classifier driver.

    Runs the configured node classifier each iteration on the remaining
    overlap cases, removes everything the emitted rules cover, and stops
    at the natural fixed point, an empty remainder, or the iteration cap.
    """
    config = config or GICConfig()
    points = dataset.norm_matrix
    labels = list(dataset.labels)
    ids = list(dataset.ids)

    warnings: list = []
    pre_routed: list = []
    if "linear" in config.kinds:
        dup_rows = _route_cross_class_duplicates(dataset)
        if dup_rows:
            pre_routed = dup_rows
            warnings.append(
                f"{len(dup_rows)} cases duplicated across classes were routed "
                "to the final overlap set"
            )

    active = [i for i in range(len(ids)) if i not in set(pre_routed)]
    rules: list = []
    assignments: dict = {}
    records: list = []
    overlap_trace: list = []
    iteration = 0
    converged = True
    while active:
        if config.i_max is not None and iteration >= config.i_max:
            converged = False
            break
        iteration += 1
        kind = config.kind_at(iteration)
        rho = config.rho_at(iteration)
        min_cases = config.min_region * len(active)
        sub_points = points[active]
        sub_labels = [labels[i] for i in active]
        if kind == "sac":
            specs = _sac_specs(sub_points, sub_labels, min_cases, rho)
        else:
            specs = _linear_specs(sub_points, sub_labels, min_cases, rho)
        if not specs:
            # a sweep that finds nothing is the natural stop; it still
            # counts as an iteration and repeats the overlap size
            overlap_trace.append(len(active) + len(pre_routed))
            records.append(
                IterationRecord(iteration, kind, [], [], len(active) + len(pre_routed))
            )
            break

        # order within the iteration: support desc, then attribute, then bounds
        def sort_key(spec):
            attr, u, run = spec
            return (
                -len(run.member_rows),
                attr if attr is not None else -1,
                run.t1 if run.t1 is not None else -math.inf,
                run.label,
            )

        specs.sort(key=sort_key)
        iteration_rules = []
        for attr, u, run in specs:
            rule = Rule(
                form=run.form if attr is not None else "linear",
                label=run.label,
                iteration=iteration,
                support=len(run.member_rows),
                rule_id=len(rules) + len(iteration_rules),
                attr=attr,
                coeffs=tuple(float(c) for c in u) if u is not None else None,
                t1=run.t1,
                t2=run.t2,
            )
            iteration_rules.append(rule)

        covered = []
        for global_row in active:
            values = points[global_row]
            for rule in iteration_rules:
                if rule.matches(values):
                    assignments[ids[global_row]] = rule.rule_id
                    covered.append(global_row)
                    break
        if not covered:  # defensive; specs always cover their member rows
            overlap_trace.append(len(active) + len(pre_routed))
            records.append(
                IterationRecord(iteration, kind, [], [], len(active) + len(pre_routed))
            )
            break
        rules.extend(iteration_rules)
        covered_set = set(covered)
        active = [i for i in active if i not in covered_set]
        overlap_trace.append(len(active) + len(pre_routed))
        records.append(
            IterationRecord(
                iteration=iteration,
                kind=kind,
                rule_ids=[r.rule_id for r in iteration_rules],
                covered_ids=[ids[i] for i in covered],
                remaining=len(active) + len(pre_routed),
            )
        )

    overlap_rows = active + pre_routed
    return IterModel(
        rules=rules,
        assignments=assignments,
        overlap_ids=sorted(ids[i] for i in overlap_rows),
        overlap_trace=overlap_trace,
        iterations=iteration,
        converged=converged,
        records=records,
        warnings=warnings,
        classes=list(dataset.classes),
    )


def sac_train(
    dataset: Dataset,
    rho: float = 1.0,
    min_region: float = 0.05,
    i_max: int | None = None,
) -> IterModel:
    """Iterative single-attribute classifier (pure value runs per attribute)."""
    return gic_run(dataset, GICConfig(kinds=("sac",), i_max=i_max, rho=rho, min_region=min_region))


def linear_iter_train(
    dataset: Dataset,
    rho: float = 1.0,
    min_region: float = 0.05,
    i_max: int | None = None,
) -> IterModel:
    """Iterative linear classifier (pure runs on fitted projections)."""
    return gic_run(
        dataset, GICConfig(kinds=("linear",), i_max=i_max, rho=rho, min_region=min_region)
    )


def predict(model: IterModel, values, fallback: KnnModel | None = None):
    """First matching rule wins, iteration order then support order.

    With no match the verdict is "unclassified" unless a fallback k-NN
    model (typically built over the residual overlap cases) is supplied.
    Returns (label, rule_id or None).
    """
    values = np.asarray(getattr(values, "norm", values), dtype=float)
    for rule in model.rules:
        if rule.form != "linear" and rule.attr >= len(values):
            raise DomainError("query dimensionality does not match the model")
        if rule.form == "linear" and len(rule.coeffs) != len(values):
            raise DomainError("query dimensionality does not match the model")
        if rule.matches(values):
            return rule.label, rule.rule_id
    if fallback is not None:
        return knn_classify(fallback, values)[0], None
    return UNCLASSIFIED, None


def overlap_knn(dataset: Dataset, model: IterModel, k: int = 3) -> KnnModel:
    """k-NN over the residual overlap cases, for opt-in fallback."""
    rows = [i for i, cid in enumerate(dataset.ids) if cid in set(model.overlap_ids)]
    if not rows:
        raise DataError("model has no overlap cases")
    k = min(k, len(rows)) if (min(k, len(rows)) % 2 == 1) else min(k, len(rows)) - 1
    return KnnModel(
        k=max(k, 1),
        points=dataset.norm_matrix[rows],
        labels=tuple(dataset.labels[i] for i in rows),
        ids=tuple(dataset.ids[i] for i in rows),
    )
