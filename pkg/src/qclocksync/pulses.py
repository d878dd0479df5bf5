"""Pulse programs: timed rf pulses, delays, frame z-rotations, gradients.

Text format, one step per line::

    PULSE <targets> <axis> <angle_rad>
    DELAY <seconds> COUPLINGS=<j,l;...>
    ZROT <target> <angle_rad>
    GRAD

``DELAY`` without a ``COUPLINGS=`` suffix evolves under the full spin
Hamiltonian; with the suffix only the listed Iz-Iz couplings act (the
refocused-delay idealization).  Round-trips losslessly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

AXES = ("x", "y", "-x", "-y")


@dataclass(frozen=True)
class RfPulse:
    targets: tuple[int, ...]
    axis: str
    angle: float

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.targets:
            raise ValueError("pulse needs at least one target spin")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate pulse targets in {self.targets}")


@dataclass(frozen=True)
class Delay:
    duration: float
    couplings: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("delay duration must be nonnegative")


@dataclass(frozen=True)
class ZRotation:
    target: int
    angle: float


@dataclass(frozen=True)
class Gradient:
    pass


PulseStep = RfPulse | Delay | ZRotation | Gradient


@dataclass(frozen=True)
class PulseProgram:
    steps: tuple[PulseStep, ...] = field(default_factory=tuple)

    def __add__(self, other: "PulseProgram") -> "PulseProgram":
        return PulseProgram(self.steps + other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def wall_time(self) -> float:
        """Total delay time; pulses and gradients are idealized as instantaneous."""
        return sum(s.duration for s in self.steps if isinstance(s, Delay))

    def has_gradient(self) -> bool:
        return any(isinstance(s, Gradient) for s in self.steps)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def to_text(program: PulseProgram) -> str:
    lines = []
    for step in program.steps:
        if isinstance(step, RfPulse):
            targets = ",".join(str(t) for t in step.targets)
            lines.append(f"PULSE {targets} {step.axis} {_fmt(step.angle)}")
        elif isinstance(step, Delay):
            line = f"DELAY {_fmt(step.duration)}"
            if step.couplings is not None:
                pairs = ";".join(f"{a},{b}" for a, b in step.couplings)
                line += f" COUPLINGS={pairs}"
            lines.append(line)
        elif isinstance(step, ZRotation):
            lines.append(f"ZROT {step.target} {_fmt(step.angle)}")
        elif isinstance(step, Gradient):
            lines.append("GRAD")
        else:
            raise TypeError(f"unknown pulse step {step!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def from_text(text: str) -> PulseProgram:
    steps: list[PulseStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        try:
            if kind == "PULSE":
                targets = tuple(int(t) for t in fields[1].split(","))
                steps.append(RfPulse(targets, fields[2], float(fields[3])))
            elif kind == "DELAY":
                couplings = None
                if len(fields) > 2:
                    if not fields[2].startswith("COUPLINGS="):
                        raise ValueError("expected COUPLINGS=<pairs>")
                    pairs = fields[2].removeprefix("COUPLINGS=")
                    couplings = tuple(
                        tuple(int(x) for x in pair.split(",")) for pair in pairs.split(";")
                    )
                steps.append(Delay(float(fields[1]), couplings))
            elif kind == "ZROT":
                steps.append(ZRotation(int(fields[1]), float(fields[2])))
            elif kind == "GRAD":
                steps.append(Gradient())
            else:
                raise ValueError(f"unknown step kind {kind!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}: {exc}") from exc
    return PulseProgram(tuple(steps))
