"""
Property Sweeps

Randomized runs of the theorems this package makes executable. Each sweep
draws its instances from one seeded generator, runs sequentially (so rows come
out in a fixed order) and returns a pandas DataFrame with one row per instance.
`summarize` reduces a frame to the JSON summary printed by `matmor sweep`.

Rows with `asserted == False` are exploratory: they are reported but never
counted as failures.
"""

from fractions import Fraction
from typing import Dict, Optional, Sequence

import pandas as pd

from .flag import FlagMatroid
from .generators import make_rng, random_flag, random_fraction, random_matroid, random_morphism
from .lorentzian import is_lorentzian, is_ultra_log_concave
from .morphism import MatroidMorphism, b_vector, cocircuit_condition, flat_condition, rank_difference_condition
from .tutte import homogeneous_tutte, lemma46_check
from .utils import fraction_text, status

GRID_Q = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
EXPLORATORY_Q = (Fraction(3, 2), Fraction(2), Fraction(4))


def _flag_row(k: int, flag: FlagMatroid, q: Sequence[Fraction], asserted: bool) -> Dict:
    verdict = is_lorentzian(homogeneous_tutte(flag, q))
    return {
        "instance": k,
        "n": flag.n,
        "length": len(flag),
        "ranks": ",".join(str(M.full_rank) for M in flag),
        "q": ",".join(fraction_text(v) for v in q),
        "ok": verdict.ok,
        "clause": verdict.clause,
        "asserted": asserted,
    }


def flag_lorentzian_sweep(instances: int = 200, seed: Optional[int] = None, max_n: int = 5, max_length: int = 3,
                          q_values: Sequence[Fraction] = GRID_Q, exploratory: bool = False) -> pd.DataFrame:
    """
    Lorentzian check of the homogeneous Tutte polynomial of random flags.

    Parameters are drawn from `q_values` (all in (0, 1]). With `exploratory`,
    every flag is also tested once with parameters drawn from values above 1;
    those rows are not asserted.
    """
    rng = make_rng(seed)
    rows = []
    for k in range(instances):
        n = int(rng.integers(1, max_n + 1))
        flag = random_flag(rng, n, int(rng.integers(1, max_length + 1)))
        q = [q_values[int(i)] for i in rng.integers(len(q_values), size=len(flag))]
        rows.append(_flag_row(k, flag, q, True))
        if exploratory:
            q = [EXPLORATORY_Q[int(i)] for i in rng.integers(len(EXPLORATORY_Q), size=len(flag))]
            rows.append(_flag_row(k, flag, q, False))
    status("sweep", f"flag-lorentzian: {len(rows)} checks")
    return pd.DataFrame(rows)


def ulc_sweep(instances: int = 500, seed: Optional[int] = None, max_n: int = 8, max_m: int = 6) -> pd.DataFrame:
    """Ultra-log-concavity of the b-vectors of random morphisms."""
    rng = make_rng(seed)
    rows = []
    for k in range(instances):
        n, m = int(rng.integers(1, max_n + 1)), int(rng.integers(1, max_m + 1))
        f = random_morphism(rng, n, m)
        counts = b_vector(f).to_list()
        verdict = is_ultra_log_concave(counts)
        rows.append({"instance": k, "n": f.n, "m": f.m, "b_vector": " ".join(map(str, counts)),
                     "ok": verdict.ok, "clause": verdict.clause, "asserted": True})
    status("sweep", f"ulc: {instances} morphisms")
    return pd.DataFrame(rows)


def lemma46_sweep(trials: int = 1000, seed: Optional[int] = None, max_n: int = 7,
                  max_length: int = 3) -> pd.DataFrame:
    """Exact check of (1/2)(1 - 1/n)(sum w)^2 >= P(q, w) at random rational (flag, q, w)."""
    rng = make_rng(seed)
    rows = []
    for k in range(trials):
        n = int(rng.integers(2, max_n + 1))
        flag = random_flag(rng, n, int(rng.integers(1, max_length + 1)))
        q = [random_fraction(rng) for _ in flag]
        w = [random_fraction(rng, Fraction(0), Fraction(4)) for _ in range(n)]
        rows.append({"trial": k, "n": n, "length": len(flag), "q": ",".join(fraction_text(v) for v in q),
                     "ok": lemma46_check(flag, q, w), "clause": None, "asserted": True})
    status("sweep", f"lemma46: {trials} trials")
    return pd.DataFrame(rows)


def conditions_sweep(instances: int = 300, seed: Optional[int] = None, max_n: int = 6,
                     max_m: int = 6) -> pd.DataFrame:
    """
    The three morphism conditions on random maps between random matroids.

    Pairs come from `random_morphism` (always morphisms) with the target
    matroid re-drawn half of the time, so both verdicts occur.
    """
    rng = make_rng(seed)
    rows = []
    for k in range(instances):
        n, m = int(rng.integers(1, max_n + 1)), int(rng.integers(1, max_m + 1))
        f = random_morphism(rng, n, m)
        if rng.random() < 0.5:
            f = MatroidMorphism(f.source, random_matroid(rng, f.m), f.mapping)
        verdicts = {
            "rank_difference": rank_difference_condition(f).ok,
            "exhaustive": rank_difference_condition(f, exhaustive=True).ok,
            "cocircuit": cocircuit_condition(f).ok,
            "flat": flat_condition(f).ok,
        }
        agree = len(set(verdicts.values())) == 1
        rows.append({"instance": k, "n": f.n, "m": f.m, **verdicts, "ok": agree,
                     "clause": None if agree else "disagreement", "asserted": True})
    status("sweep", f"conditions: {instances} maps")
    return pd.DataFrame(rows)


SWEEPS = {
    "flag-lorentzian": flag_lorentzian_sweep,
    "ulc": ulc_sweep,
    "lemma46": lemma46_sweep,
    "conditions": conditions_sweep,
}


def summarize(name: str, frame: pd.DataFrame) -> Dict:
    """Counts of asserted rows, failures among them, and the exploratory outcomes."""
    if frame.empty:
        return {"sweep": name, "instances": 0, "failures": 0, "failing_rows": []}
    asserted = frame[frame["asserted"]]
    exploratory = frame[~frame["asserted"]]
    failures = asserted[~asserted["ok"]]
    summary = {
        "sweep": name,
        "instances": int(len(asserted)),
        "failures": int(len(failures)),
        "failing_rows": failures.drop(columns=["asserted"]).to_dict(orient="records")[:5],
    }
    if len(exploratory):
        summary["exploratory"] = {
            "instances": int(len(exploratory)),
            "not_lorentzian": int((~exploratory["ok"]).sum()),
        }
    if "rank_difference" in frame.columns:
        summary["morphisms"] = int(frame["rank_difference"].sum())
    return summary
