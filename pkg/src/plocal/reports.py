"""Structured verification reports, text/JSON rendering, and suite runs.

A report records the target, the evaluated hypotheses with witnesses,
one entry per machine check, an overall verdict, wall time, and the
caps it ran under.  Unmet hypotheses make the verdict not-applicable;
a pass requires at least one executed check with none failing.
"""

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict

from .config import DEFAULT_LIMITS, parse_config
from .errors import ConfigError, Error, UnknownNameError


@dataclass
class Hypothesis:
    name: str
    held: bool
    detail: str = ""


@dataclass
class Step:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    theorem: str
    target: dict
    hypotheses: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    verdict: str = "pass"
    timing_ms: float = 0.0
    config: dict = field(default_factory=dict)

    def ok(self):
        return self.verdict in ("pass", "not-applicable")

    def as_dict(self, stable=False):
        return {
            "target": dict(self.target, theorem=self.theorem),
            "hypotheses": [asdict(h) for h in self.hypotheses],
            "steps": [asdict(s) for s in self.steps],
            "verdict": self.verdict,
            "timing_ms": 0.0 if stable else round(self.timing_ms, 3),
            "config": self.config,
        }

    def to_json(self, stable=False):
        return json.dumps(self.as_dict(stable=stable), indent=2, sort_keys=True)

    def to_text(self, stable=False):
        t = self.target
        head = f"{self.theorem}  group={t.get('group')}  p={t.get('prime')}"
        extra = ", ".join(
            f"{k}={v}" for k, v in sorted(t.items()) if k not in ("group", "prime")
        )
        lines = [head + (f"  ({extra})" if extra else "")]
        for h in self.hypotheses:
            mark = "holds" if h.held else "FAILS"
            lines.append(f"  hypothesis {h.name}: {mark}" + (f" -- {h.detail}" if h.detail else ""))
        for s in self.steps:
            mark = "pass" if s.passed else "FAIL"
            lines.append(f"  step {s.name}: {mark}" + (f" -- {s.detail}" if s.detail else ""))
        ms = "-" if stable else f"{self.timing_ms:.1f} ms"
        lines.append(f"  verdict: {self.verdict}  [{ms}]")
        return "\n".join(lines)


@dataclass
class SuiteResult:
    reports: list  # (run descriptor dict, VerificationReport)
    exit_code: int
    config: dict = field(default_factory=dict)

    def summary(self):
        counts = {"pass": 0, "fail": 0, "not-applicable": 0, "error": 0}
        for _, rep in self.reports:
            counts[rep.verdict] = counts.get(rep.verdict, 0) + 1
        return counts

    def to_text(self, stable=False):
        blocks = [rep.to_text(stable=stable) for _, rep in self.reports]
        counts = self.summary()
        tail = "suite: " + "  ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        tail += f"  exit={self.exit_code}"
        return "\n\n".join(blocks + [tail])

    def to_json(self, stable=False):
        return json.dumps(
            {
                "entries": [
                    dict(run, report=rep.as_dict(stable=stable))
                    for run, rep in self.reports
                ],
                "summary": self.summary(),
                "exit_code": self.exit_code,
                "config": self.config,
            },
            indent=2,
            sort_keys=True,
        )


def _build_entry(run, groups_cache, limits):
    # Late import: the verifiers depend on this module for the report types.
    from .verify import THEOREM_IDS, canonical_id
    from .library import build_library_group

    name = run.get("group")
    if not name:
        raise ConfigError("run block is missing a group name")
    try:
        prime = int(run.get("prime", "0"))
    except ValueError:
        raise ConfigError(f"run block has a non-integer prime: {run.get('prime')!r}")
    if prime <= 1:
        raise ConfigError(f"run block needs a prime, got {run.get('prime')!r}")
    key = name.strip().lower().replace(" ", "")
    if key not in groups_cache:
        try:
            groups_cache[key] = build_library_group(name, limits=limits)
        except UnknownNameError as e:
            raise ConfigError(str(e))
    G = groups_cache[key]
    theorem = run.get("theorem", "all")
    if theorem.strip().lower() in ("all", "*"):
        ids = list(THEOREM_IDS)
    else:
        ids = [t.strip() for t in theorem.split(",") if t.strip()]
        for t in ids:
            if canonical_id(t) is None:
                raise ConfigError(
                    f"unknown theorem {t!r}; valid: " + ", ".join(THEOREM_IDS)
                )
    return G, prime, ids, run.get("t")


def default_runs():
    """The built-in corpus: every verifier on each group/prime pair."""
    from .verify import DEFAULT_CORPUS

    runs = []
    for name, prime, ids, exploratory in DEFAULT_CORPUS:
        run = {"group": name, "prime": str(prime)}
        if ids is not None:
            run["theorem"] = ",".join(ids)
        if exploratory:
            run["exploratory"] = "yes"
        runs.append(run)
    return runs


def run_suite(config_text=None, out_dir=None, limits=None, stable=False, jobs=1):
    """Run the configured (group, prime, theorem) entries and collect reports.

    With no config at all the default corpus runs.  A config that parses
    to zero run blocks yields an empty report with exit code 0.
    """
    from .verify import canonical_id, verify

    if config_text is None:
        base = limits or DEFAULT_LIMITS
        runs = default_runs()
    else:
        base, runs = parse_config(config_text)
        if limits is not None:
            base = limits

    groups_cache = {}
    entries = []  # (descriptor, G, prime, theorem id, t)
    for run in runs:
        G, prime, ids, t = _build_entry(run, groups_cache, base)
        for tid in ids:
            desc = {
                "group": run["group"],
                "prime": prime,
                "theorem": canonical_id(tid) or tid,
            }
            if run.get("exploratory"):
                desc["exploratory"] = True
            entries.append((desc, G, prime, tid, t))

    def run_one(entry):
        desc, G, prime, tid, t = entry
        try:
            return verify(tid, G, prime, t=t, limits=base)
        except Error as e:
            rep = VerificationReport(
                theorem=desc["theorem"],
                target={"group": desc["group"], "prime": prime},
            )
            rep.steps.append(Step("run", False, f"{type(e).__name__}: {e}"))
            rep.verdict = "error"
            return rep

    if jobs > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_one, entries))
    else:
        reports = [run_one(e) for e in entries]

    paired = [(desc, rep) for (desc, *_), rep in zip(entries, reports)]
    bad = any(rep.verdict in ("fail", "error") for _, rep in paired)
    result = SuiteResult(
        paired,
        1 if bad else 0,
        config=dict(asdict(base), runs=len(runs), entries=len(entries)),
    )
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "suite.txt"), "w") as fh:
            fh.write(result.to_text(stable=stable) + "\n")
        with open(os.path.join(out_dir, "suite.json"), "w") as fh:
            fh.write(result.to_json(stable=stable) + "\n")
    return result
