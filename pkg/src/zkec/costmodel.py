"""Time and energy accounting for protocol runs on constrained devices.

Every cost is ``E = V * I * t``: compute at the MCU current for the
profiled duration of each operation, radio at the Tx/Rx current for the
air time of each message.  A :class:`CostLedger` counts what a party did;
:func:`session_report` prices it against a :class:`DeviceProfile`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import ParameterError
from .wire import airtime

OPS = ("keygen", "point_mul", "point_add", "hash", "scalar_add", "scalar_mul")
_ALIASES = {"sha1_250B": "hash", "sha1": "hash"}


def _op_name(op: str) -> str:
    op = _ALIASES.get(op, op)
    if op not in OPS:
        raise ParameterError(f"unknown operation {op!r}")
    return op


@dataclass
class CostLedger:
    """Operation and traffic counts accumulated by one party."""

    keygen: int = 0
    point_mul: int = 0
    point_add: int = 0
    hash: int = 0
    scalar_add: int = 0
    scalar_mul: int = 0
    messages_tx: int = 0
    messages_rx: int = 0
    bytes_tx: int = 0
    bytes_rx: int = 0

    def count(self, op: str, times: int = 1) -> None:
        op = _op_name(op)
        setattr(self, op, getattr(self, op) + times)

    def sent(self, nbytes: int) -> None:
        self.messages_tx += 1
        self.bytes_tx += nbytes

    def received(self, nbytes: int) -> None:
        self.messages_rx += 1
        self.bytes_rx += nbytes

    def ops(self) -> dict[str, int]:
        return {op: getattr(self, op) for op in OPS}

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def __add__(self, other: CostLedger) -> CostLedger:
        if not isinstance(other, CostLedger):
            return NotImplemented
        return CostLedger(**{k: v + getattr(other, k) for k, v in self.as_dict().items()})


@dataclass(frozen=True)
class DeviceProfile:
    name: str
    voltage: float
    mcu_current: float
    tx_current: float
    rx_current: float
    op_times: Mapping[str, float]
    data_rate: float = 250_000

    def __post_init__(self):
        for attr in ("voltage", "mcu_current", "tx_current", "rx_current", "data_rate"):
            if not getattr(self, attr) > 0:
                raise ParameterError(f"{self.name}: {attr} must be positive")
        times = {_op_name(k): float(v) for k, v in self.op_times.items()}
        missing = set(OPS) - set(times)
        if missing:
            raise ParameterError(f"{self.name}: no timing for {sorted(missing)}")
        if any(t < 0 for t in times.values()):
            raise ParameterError(f"{self.name}: negative operation time")
        object.__setattr__(self, "op_times", times)

    @classmethod
    def from_config(cls, text: str) -> DeviceProfile:
        """Parse ``key = value`` lines; ``#`` starts a comment."""
        values: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ParameterError(f"line {lineno}: expected 'key = value'")
            values[key.strip()] = value.strip()
        try:
            ops = {k[3:]: float(v) for k, v in values.items() if k.startswith("op.")}
            return cls(
                name=values.get("name", "custom"),
                voltage=float(values["voltage"]),
                mcu_current=float(values["mcu_current"]),
                tx_current=float(values["tx_current"]),
                rx_current=float(values["rx_current"]),
                data_rate=float(values.get("data_rate", 250_000)),
                op_times=ops,
            )
        except KeyError as exc:
            raise ParameterError(f"profile is missing {exc.args[0]!r}") from None
        except ValueError as exc:
            raise ParameterError(f"bad number in profile: {exc}") from None

    def to_config(self) -> str:
        lines = [
            f"name = {self.name}",
            f"voltage = {self.voltage!r}",
            f"mcu_current = {self.mcu_current!r}",
            f"tx_current = {self.tx_current!r}",
            f"rx_current = {self.rx_current!r}",
            f"data_rate = {self.data_rate!r}",
        ]
        lines += [f"op.{op} = {self.op_times[op]!r}" for op in OPS]
        return "\n".join(lines) + "\n"


def load_profile(path) -> DeviceProfile:
    return DeviceProfile.from_config(Path(path).read_text())


def _builtin_profiles() -> dict[str, DeviceProfile]:
    out = {}
    for entry in resources.files(__package__).joinpath("profiles").iterdir():
        if entry.name.endswith(".conf"):
            prof = DeviceProfile.from_config(entry.read_text())
            out[prof.name] = prof
    return out


PROFILES = _builtin_profiles()


def get_profile(name: str) -> DeviceProfile:
    """Built-in profile by name, or a path to a profile config file."""
    if name in PROFILES:
        return PROFILES[name]
    if Path(name).is_file():
        return load_profile(name)
    raise ParameterError(f"unknown device profile {name!r}; known: {sorted(PROFILES)}")


def op_energy(profile: DeviceProfile, op: str) -> float:
    """Joules for one operation at the MCU's active current."""
    return profile.voltage * profile.mcu_current * profile.op_times[_op_name(op)]


def message_energy(profile: DeviceProfile, nbytes: int, direction: str) -> float:
    if direction == "tx":
        current = profile.tx_current
    elif direction == "rx":
        current = profile.rx_current
    else:
        raise ParameterError(f"direction must be 'tx' or 'rx', not {direction!r}")
    return profile.voltage * current * airtime(nbytes, profile.data_rate)


@dataclass(frozen=True)
class CostLine:
    item: str
    count: int
    time: float
    energy: float


@dataclass(frozen=True)
class CostReport:
    profile: str
    total_time: float
    compute_energy: float
    radio_energy: float
    total_energy: float
    breakdown: tuple[CostLine, ...] = field(default=())

    def to_table(self) -> str:
        head = f"{'item':<12}{'count':>8}{'time [s]':>14}{'energy [mJ]':>14}"
        rows = [head, "-" * len(head)]
        for ln in self.breakdown:
            rows.append(f"{ln.item:<12}{ln.count:>8}{ln.time:>14.4f}{ln.energy * 1e3:>14.4f}")
        rows.append("-" * len(head))
        rows.append(f"{'total':<12}{'':>8}{self.total_time:>14.4f}{self.total_energy * 1e3:>14.4f}")
        return "\n".join(rows)

    def to_lines(self) -> str:
        """One ``metric<TAB>value<TAB>unit`` record per line."""
        out = [
            ("total_time", self.total_time, "s"),
            ("compute_energy", self.compute_energy, "J"),
            ("radio_energy", self.radio_energy, "J"),
            ("total_energy", self.total_energy, "J"),
        ]
        for ln in self.breakdown:
            out.append((f"{ln.item}.count", ln.count, "1"))
            out.append((f"{ln.item}.time", ln.time, "s"))
            out.append((f"{ln.item}.energy", ln.energy, "J"))
        return "\n".join(f"{k}\t{v!r}\t{u}" for k, v, u in out)


def session_report(ledger: CostLedger, profile: DeviceProfile) -> CostReport:
    """Price a ledger.

    Time is compute time plus transmit air time.  Reception is charged
    energy but no time: it overlaps the peer's transmission, so on a
    combined prover+verifier ledger each message is timed once.
    """
    lines = []
    for op in OPS:
        n = getattr(ledger, op)
        t = n * profile.op_times[op]
        lines.append(CostLine(op, n, t, n * op_energy(profile, op)))
    compute = sum(ln.energy for ln in lines)
    tx = CostLine("radio_tx", ledger.bytes_tx, airtime(ledger.bytes_tx, profile.data_rate),
                  message_energy(profile, ledger.bytes_tx, "tx"))
    rx = CostLine("radio_rx", ledger.bytes_rx, 0.0,
                  message_energy(profile, ledger.bytes_rx, "rx"))
    lines += [tx, rx]
    radio = tx.energy + rx.energy
    return CostReport(
        profile=profile.name,
        total_time=sum(ln.time for ln in lines),
        compute_energy=compute,
        radio_energy=radio,
        total_energy=compute + radio,
        breakdown=tuple(lines),
    )
