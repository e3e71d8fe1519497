"""Run the proposition audit over fixtures and random instances.

Random instances are generated per proposition from ``(seed, proposition,
index)``, so results are a pure function of the arguments. Work is split into
rounds of index chunks; a measure drops out of a proposition as soon as a
violation is found and the smallest violating index is reported.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..measures import BASELINE_IDS, MEASURES, get_measure
from .catalog import (PROPOSITIONS, VARIANTS, BASELINE_PROPS, ExpectedCell, get_proposition)
from .checks import (DEFAULT_POLICIES, HOLDS, REJECTED, VIOLATED, Instance, LocalVerdict, check,
                     random_instance)
from .fixtures import instances_for

CHUNK = 50
HOLDS_ON_SUITE, VIOLATED_STATUS, UNDEFINED_STATUS = "holds", "violated", "undefined"
IMPLIED_BY = {"recall": "RecPro1", "precision": "PrecPro1", "generalization": "GenPro1"}


def table_of(measure_id: str) -> str:
    if measure_id in BASELINE_IDS:
        return "baseline"
    return get_measure(measure_id).dimension


@dataclass
class PropositionVerdict:
    measure: str
    proposition: str
    status: str
    instances: int = 0
    rejected: int = 0
    eps: float = 0.0
    witness: Optional[Instance] = None
    detail: Optional[LocalVerdict] = None

    @property
    def mark(self) -> str:
        return {HOLDS_ON_SUITE: "✓", VIOLATED_STATUS: "✗"}.get(self.status, "?")

    def summary(self) -> str:
        if self.status == HOLDS_ON_SUITE:
            return f"HoldsOnSuite({self.instances})"
        if self.status == VIOLATED_STATUS:
            return f"Violated({self.witness.source}: {self.detail.values_text()})"
        return f"UndefinedEncountered({self.rejected} rejected)"


@dataclass
class SuiteResult:
    verdicts: List[PropositionVerdict]
    seed: int
    budget: int
    policies: Tuple[int, ...]
    notes: List[str] = field(default_factory=list)

    def get(self, measure: str, prop: str) -> Optional[PropositionVerdict]:
        for v in self.verdicts:
            if v.measure == measure and v.proposition == prop:
                return v
        return None


def applicable_pairs(measures: Iterable[str], props: Iterable[str]) -> List[Tuple[str, str]]:
    props = list(props)
    pairs = []
    for m in measures:
        info = get_measure(m)
        allowed = BASELINE_PROPS.get(m)
        for p in props:
            if get_proposition(p).applies_to(info.dimension) and (allowed is None or p in allowed):
                pairs.append((m, p))
    return pairs


def _job(args):
    prop, seed, start, stop, measures, eps, policies = args
    out: Dict[str, Tuple[int, int, Optional[int]]] = {m: (0, 0, None) for m in measures}
    active = list(measures)
    for index in range(start, stop):
        if not active:
            break
        inst = random_instance(prop, seed, index)
        if inst is None:
            continue
        for m in list(active):
            r = check(m, inst, eps, policies)
            n, rej, viol = out[m]
            if r.status == VIOLATED:
                out[m] = (n, rej, index)
                active.remove(m)
            elif r.status == REJECTED:
                out[m] = (n, rej + 1, None)
            else:
                out[m] = (n + 1, rej, None)
    return prop, out


def run_suite(measures: Sequence[str], props: Sequence[str], budget: int = 500, seed: int = 7,
              eps: Optional[float] = None, workers: Optional[int] = None,
              policies: Sequence[int] = DEFAULT_POLICIES, use_fixtures: bool = True,
              chunk: int = CHUNK) -> SuiteResult:
    if budget < 1:
        raise ValueError("budget must be at least 1")
    pairs = applicable_pairs(measures, props)
    policies = tuple(policies)
    state: Dict[Tuple[str, str], PropositionVerdict] = {}
    for m, p in pairs:
        state[(m, p)] = PropositionVerdict(m, p, HOLDS_ON_SUITE,
                                           eps=get_measure(m).eps if eps is None else eps)

    # fixtures first
    if use_fixtures:
        for m, p in pairs:
            for inst in instances_for(p):
                r = check(m, inst, eps, policies)
                if r.status == VIOLATED:
                    v = state[(m, p)]
                    v.status, v.witness, v.detail = VIOLATED_STATUS, inst, r
                    break

    active: Dict[str, List[str]] = {}
    for (m, p), v in state.items():
        if v.status == HOLDS_ON_SUITE:
            active.setdefault(p, []).append(m)
    first_violation: Dict[Tuple[str, str], int] = {}
    executor = ProcessPoolExecutor(max_workers=workers) if workers != 1 else None
    try:
        for start in range(0, budget, chunk):
            stop = min(budget, start + chunk)
            jobs = [(p, seed, start, stop, tuple(ms), eps, policies)
                    for p, ms in sorted(active.items()) if ms]
            if not jobs:
                break
            results = executor.map(_job, jobs) if executor else map(_job, jobs)
            for prop, out in results:
                for m, (n, rej, viol) in out.items():
                    v = state[(m, prop)]
                    v.instances += n
                    v.rejected += rej
                    if viol is not None:
                        first_violation[(m, prop)] = viol
                        active[prop].remove(m)
    finally:
        if executor:
            executor.shutdown()

    for (m, p), index in first_violation.items():
        inst = random_instance(p, seed, index)
        r = check(m, inst, eps, policies)
        v = state[(m, p)]
        v.status, v.witness, v.detail = VIOLATED_STATUS, inst, r
    for v in state.values():
        if v.status == HOLDS_ON_SUITE and v.instances == 0:
            v.status = UNDEFINED_STATUS

    result = SuiteResult([state[pair] for pair in pairs], seed, budget, policies)
    _derive_implied(result, eps, policies)
    return result


def _derive_implied(result: SuiteResult, eps, policies) -> None:
    """A behavior counter-example is also a model-extension counter-example.

    Language-equal models are each contained in the other, so whichever order
    makes the values disagree in the forbidden direction is a valid instance.
    """
    for v in result.verdicts:
        if v.proposition != "BehPro" or v.status != VIOLATED_STATUS:
            continue
        target = IMPLIED_BY[get_measure(v.measure).dimension]
        tv = result.get(v.measure, target)
        if tv is None or tv.status == VIOLATED_STATUS:
            continue
        (log,), (m1, m2) = v.witness.logs, v.witness.models
        for models in ((m1, m2), (m2, m1)):
            inst = Instance(target, (log,), models, f"derived from BehPro witness ({v.witness.source})")
            if not inst.precondition():
                continue
            r = check(v.measure, inst, eps, policies)
            if r.status == VIOLATED:
                tv.status, tv.witness, tv.detail = VIOLATED_STATUS, inst, r
                result.notes.append(f"{v.measure} {target}: violation derived from BehPro witness")
                break


def implication_conflicts(result: SuiteResult) -> List[str]:
    """Measures reported to satisfy model extension but to violate behavior equality."""
    out = []
    for v in result.verdicts:
        if v.proposition != "BehPro" or v.status != VIOLATED_STATUS:
            continue
        target = IMPLIED_BY[get_measure(v.measure).dimension]
        tv = result.get(v.measure, target)
        if tv is not None and tv.status == HOLDS_ON_SUITE:
            out.append(f"{v.measure}: {target} holds but BehPro is violated")
    return out


# ---------------------------------------------------------------------------
# reports

def grid_csv(result: SuiteResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "proposition", "measure", "verdict", "instances", "rejected", "eps",
                "witness", "values"])
    for v in result.verdicts:
        w.writerow([table_of(v.measure), v.proposition, v.measure, v.status, v.instances, v.rejected,
                    v.eps, v.witness.source if v.witness else "",
                    v.detail.values_text() if v.detail else ""])
    return buf.getvalue()


def grid_markdown(result: SuiteResult) -> str:
    blocks = []
    order = ["recall", "precision", "generalization", "baseline"]
    for table in order:
        cells = [v for v in result.verdicts if table_of(v.measure) == table]
        if not cells:
            continue
        measures = list(dict.fromkeys(v.measure for v in cells))
        props = [p.id for p in PROPOSITIONS + VARIANTS if any(v.proposition == p.id for v in cells)]
        lines = [f"### {table}", "",
                 "| Proposition | " + " | ".join(measures) + " |",
                 "|---|" + "---|" * len(measures)]
        for p in props:
            row = []
            for m in measures:
                v = result.get(m, p)
                row.append(v.mark if v else "")
            lines.append(f"| {p} | " + " | ".join(row) + " |")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def grid_jsonl(result: SuiteResult) -> str:
    lines = []
    for v in result.verdicts:
        lines.append(json.dumps({
            "table": table_of(v.measure), "measure": v.measure, "proposition": v.proposition,
            "verdict": v.status, "instances": v.instances, "rejected": v.rejected,
            "eps": v.eps, "policy_seeds": list(result.policies), "seed": result.seed,
            "budget": result.budget, "witness": v.witness.source if v.witness else None,
            "values": v.detail.values_text() if v.detail else None,
        }, sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class CellDiff:
    table: str
    proposition: str
    measure: str
    expected: str
    got: str

    def __str__(self) -> str:
        return f"{self.table} {self.proposition} {self.measure}: expected {self.expected}, got {self.got}"


def compare(result: SuiteResult, expected: Sequence[ExpectedCell]) -> List[CellDiff]:
    """Cell-level differences for cells present in both grids.

    Measures that appear under two names (prec_H and prec_TB) are compared
    within the table the reference assigns them to.
    """
    diffs = []
    for cell in expected:
        v = result.get(cell.measure, cell.proposition)
        if v is None:
            continue
        want = HOLDS_ON_SUITE if cell.holds else VIOLATED_STATUS
        if v.status != want:
            diffs.append(CellDiff(cell.table, cell.proposition, cell.measure, want, v.status))
    return diffs


def write_witnesses(result: SuiteResult, directory: str) -> List[str]:
    """Serialize every violation as logs, nets, automata and a manifest."""
    os.makedirs(directory, exist_ok=True)
    index = []
    for v in result.verdicts:
        if v.status != VIOLATED_STATUS:
            continue
        name = f"{v.measure}__{v.proposition}"
        sub = os.path.join(directory, name)
        manifest = v.witness.write(sub)
        manifest.update({"measure": v.measure, "eps": v.eps, "policy_seeds": list(result.policies),
                         "values": {k: val.format() for k, val in v.detail.values}})
        with open(os.path.join(sub, "manifest.json"), "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True, ensure_ascii=False)
            fh.write("\n")
        index.append(name)
    with open(os.path.join(directory, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump({"seed": result.seed, "budget": result.budget, "witnesses": index}, fh, indent=2)
        fh.write("\n")
    return index


def replay_witness(directory: str) -> Tuple[Dict[str, object], LocalVerdict]:
    with open(os.path.join(directory, "manifest.json"), encoding="utf-8") as fh:
        manifest = json.load(fh)
    inst = Instance.read(directory, manifest)
    r = check(manifest["measure"], inst, manifest["eps"], manifest["policy_seeds"])
    return manifest, r
