"""The conformance propositions: identifiers, tags, scope and comparison shape."""
from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Tuple

from ..measures import GENERALIZATION, PRECISION, RECALL

# How an instance is built and what is compared.
DETERMINISM = "determinism"      # same (l, m), several policies
BEHAVIOR = "behavior"            # (l, m1, m2) with equal languages
EXTEND_MODEL = "extend_model"    # (l, m1, m2) with tau(m1) within tau(m2)
ADD_FITTING = "add_fitting"      # (l1, l2 = l1 + l3, m) with l3 fitting
ADD_NONFITTING = "add_nonfitting"
DUPLICATE = "duplicate"          # (l, l^k, m)
FITTING_LOG = "fitting_log"      # (l, m) with tau(l) within tau(m)
EQUAL_LANGUAGE = "equal_language"
MODEL_WITHIN_LOG = "model_within_log"
UNIVERSAL_MODEL = "universal_model"

# Relations compare the value on the first log/model with the value on the second.
LE, GE, EQ, ONE = "<=", ">=", "==", "=1"


@dataclass(frozen=True)
class Proposition:
    id: str
    number: int
    tag: str                 # "+" broadly supported, "0" debatable
    dimension: Optional[str]  # None applies to every dimension
    kind: str
    relation: Optional[str]  # comparison of first value against second
    log_condition: Optional[str] = None  # condition on the first log: fitting, nonfitting, mostly_*
    statement: str = ""

    def applies_to(self, dimension: str) -> bool:
        return self.dimension is None or self.dimension == dimension


PROPOSITIONS: Tuple[Proposition, ...] = (
    Proposition("DetPro", 1, "+", None, DETERMINISM, EQ,
                statement="the value is fully determined by the log and the model"),
    Proposition("BehPro", 2, "+", None, BEHAVIOR, EQ,
                statement="models with the same language get the same value"),
    Proposition("RecPro1", 3, "+", RECALL, EXTEND_MODEL, LE,
                statement="allowing more behavior never lowers recall"),
    Proposition("RecPro2", 4, "+", RECALL, ADD_FITTING, LE,
                statement="adding fitting traces never lowers recall"),
    Proposition("RecPro3", 5, "0", RECALL, ADD_NONFITTING, GE,
                statement="adding non-fitting traces never raises recall"),
    Proposition("RecPro4", 6, "0", RECALL, DUPLICATE, EQ,
                statement="duplicating the log leaves recall unchanged"),
    Proposition("RecPro5", 7, "+", RECALL, FITTING_LOG, ONE,
                statement="recall is 1 when every trace fits"),
    Proposition("PrecPro1", 8, "+", PRECISION, EXTEND_MODEL, GE,
                statement="allowing more unobserved behavior never raises precision"),
    Proposition("PrecPro2", 9, "+", PRECISION, ADD_FITTING, LE,
                statement="adding fitting traces never lowers precision"),
    Proposition("PrecPro3", 10, "0", PRECISION, ADD_NONFITTING, EQ,
                statement="adding non-fitting traces leaves precision unchanged"),
    Proposition("PrecPro4", 11, "0", PRECISION, DUPLICATE, EQ,
                statement="duplicating the log leaves precision unchanged"),
    Proposition("PrecPro5", 12, "+", PRECISION, EQUAL_LANGUAGE, ONE,
                statement="precision is 1 when the model allows exactly the observed traces"),
    Proposition("PrecPro6", 13, "0", PRECISION, MODEL_WITHIN_LOG, ONE,
                statement="precision is 1 when every model trace was observed"),
    Proposition("GenPro1", 14, "+", GENERALIZATION, EXTEND_MODEL, LE,
                statement="allowing more behavior never lowers generalization"),
    Proposition("GenPro2", 15, "+", GENERALIZATION, ADD_FITTING, LE,
                statement="adding fitting traces never lowers generalization"),
    Proposition("GenPro3", 16, "0", GENERALIZATION, ADD_NONFITTING, GE,
                statement="adding non-fitting traces never raises generalization"),
    Proposition("GenPro4", 17, "+", GENERALIZATION, DUPLICATE, LE, "fitting",
                statement="duplicating a fitting log never lowers generalization"),
    Proposition("GenPro5", 18, "+", GENERALIZATION, DUPLICATE, GE, "nonfitting",
                statement="duplicating a non-fitting log never raises generalization"),
    Proposition("GenPro6", 19, "0", GENERALIZATION, DUPLICATE, LE, "mostly_fitting",
                statement="duplicating a mostly fitting log never lowers generalization"),
    Proposition("GenPro7", 20, "0", GENERALIZATION, DUPLICATE, GE, "mostly_nonfitting",
                statement="duplicating a mostly non-fitting log never raises generalization"),
    Proposition("GenPro8", 21, "0", GENERALIZATION, UNIVERSAL_MODEL, ONE,
                statement="generalization is 1 when the model allows every trace"),
)

# Opt-in variants: selectable by id, never part of "all" or the reference grid.
VARIANTS: Tuple[Proposition, ...] = (
    Proposition("RecPro3F", 5, "0", RECALL, ADD_NONFITTING, GE, "fitting",
                statement="adding non-fitting traces to a fitting log never raises recall"),
)

PROPOSITION_BY_ID: Dict[str, Proposition] = {p.id: p for p in PROPOSITIONS + VARIANTS}

# Baseline table rows; the other tables use every proposition of their dimension.
BASELINE_PROPS = {
    "rec_TB": ("DetPro", "BehPro", "RecPro1", "RecPro2", "RecPro3", "RecPro4", "RecPro5"),
    "rec_FB": ("DetPro", "BehPro", "RecPro1", "RecPro2", "RecPro3", "RecPro4", "RecPro5"),
    "prec_TB": ("DetPro", "BehPro", "PrecPro1", "PrecPro2", "PrecPro3", "PrecPro4", "PrecPro5",
                "PrecPro6"),
}

_RANGE = re.compile(r"([A-Za-z]+)(\d+)\.\.(?:[A-Za-z]+)?(\d+)\Z")


def get_proposition(pid: str) -> Proposition:
    try:
        return PROPOSITION_BY_ID[pid]
    except KeyError:
        raise KeyError(f"unknown proposition {pid!r}") from None


def parse_props(spec: str) -> List[str]:
    """Parse ``all``, comma lists and ranges such as ``RecPro1..5``."""
    out: List[str] = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok == "all":
            out.extend(p.id for p in PROPOSITIONS)
            continue
        m = _RANGE.match(tok)
        if m:
            stem, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
            if lo > hi:
                raise ValueError(f"empty proposition range {tok!r}")
            ids = [f"{stem}{i}" for i in range(lo, hi + 1)]
        else:
            ids = [tok]
        for pid in ids:
            get_proposition(pid)
        out.extend(ids)
    seen = set()
    return [p for p in out if not (p in seen or seen.add(p))]


@dataclass(frozen=True)
class ExpectedCell:
    table: str
    proposition: str
    measure: str
    holds: bool


def load_expected(path=None) -> List[ExpectedCell]:
    """Reference verdict grid; the packaged one when ``path`` is None."""
    if path is None:
        text = resources.files("confprop").joinpath("data/tables_paper.csv").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    cells = []
    for row in csv.DictReader(text.splitlines()):
        if row["expected"] not in ("holds", "violated"):
            raise ValueError(f"bad expected value {row['expected']!r}")
        cells.append(ExpectedCell(row["table"], row["proposition"], row["measure"],
                                  row["expected"] == "holds"))
    return cells
