"""Verification records, run configuration, and report serialization.

A VerificationRecord captures one certified claim: the computed quantity,
the bound it must respect, the margin, and a pass flag.  Records are plain
data and reproduce bit-for-bit for a fixed configuration; `pass` is always
equivalent to `margin > 0`.
"""

import json
from dataclasses import dataclass, fields, replace


class ConfigError(ValueError):
    """Invalid run configuration (bad value, unknown key, unreadable file)."""


@dataclass
class VerificationRecord:
    name: str
    claim: str
    computed: float
    bound: float
    margin: float
    passed: bool
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "computed": self.computed,
            "bound": self.bound,
            "margin": self.margin,
            "pass": self.passed,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        return cls(
            name=d["name"],
            claim=d["claim"],
            computed=d["computed"],
            bound=d["bound"],
            margin=d["margin"],
            passed=d["pass"],
            notes=d.get("notes", ""),
        )


def make_record(name, claim, computed, bound, margin, notes=""):
    """Build a record; the pass flag is derived from the margin sign."""
    return VerificationRecord(
        name=name,
        claim=claim,
        computed=float(computed),
        bound=float(bound),
        margin=float(margin),
        passed=bool(margin > 0.0),
        notes=notes,
    )


def emit_report(records) -> str:
    """Serialize records to a JSON report string (round-trips exactly)."""
    return json.dumps(
        {"records": [r.to_dict() for r in records]}, indent=2, sort_keys=False
    )


def parse_report(text: str):
    data = json.loads(text)
    return [VerificationRecord.from_dict(d) for d in data["records"]]


@dataclass
class RunConfig:
    """Knobs shared by the CLI drivers; defaults match the certified suite."""

    a_max_sphere: float = 40.0
    a_max_torus: float = 50.0
    grid_step: float = 0.01
    tolerance: float = 1e-9
    n_max: int = 20
    alpha: float = 0.5
    out_dir: str = "out"
    threads: int = 1

    def validate(self) -> "RunConfig":
        numeric = {
            "a_max_sphere": self.a_max_sphere,
            "a_max_torus": self.a_max_torus,
            "grid_step": self.grid_step,
            "tolerance": self.tolerance,
            "n_max": self.n_max,
            "alpha": self.alpha,
            "threads": self.threads,
        }
        for key, val in numeric.items():
            if not val > 0:
                raise ConfigError(f"{key} must be positive, got {val!r}")
        if self.grid_step > 0.01 + 1e-15:
            raise ConfigError("grid_step must be <= 0.01 for certification")
        if self.alpha > 1.0:
            raise ConfigError("alpha must lie in (0, 1]")
        return self

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        """Read a flat key=value config file ('#' starts a comment line)."""
        cfg = cls()
        casts = {f.name: type(getattr(cfg, f.name)) for f in fields(cls)}
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        updates = {}
        for lineno, raw in enumerate(lines, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in casts:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                updates[key] = casts[key](value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}") from exc
        return replace(cfg, **updates)


def fmt17(x) -> str:
    """Format a float with 17 significant digits, locale-free."""
    return format(float(x), ".17g")


def write_csv(path, colnames, rows, header_comments=()):
    """Write rows of floats as CSV with '#' comment lines before the header."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for comment in header_comments:
            fh.write(f"# {comment}\n")
        fh.write(",".join(colnames) + "\n")
        for row in rows:
            fh.write(",".join(fmt17(v) if isinstance(v, (int, float)) else str(v)
                              for v in row) + "\n")
