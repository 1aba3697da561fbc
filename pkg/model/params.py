"""Model parameters, all frequencies in units of the cavity frequency."""

from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, List, Sequence, Tuple

from ..errors import InvalidParameterError
from ..linalg import HilbertLayout
from ..settings import DEFAULT_N_FOCK

# A qubit coupling counts as "small" against g_p below this ratio
WEAK_COUPLING_RATIO = 0.2

SWEEP_NAMES = ("omega_p", "g_p", "delta", "omega_q1", "omega_q2", "g", "g1", "g2", "n_fock")


@dataclass(frozen=True)
class RabiParams:
    """Quantum Rabi system: QRS qubit + single cavity mode."""
    omega_p: float
    g_p: float
    n_fock: int = DEFAULT_N_FOCK
    omega_cav: float = 1.0

    def __post_init__(self):
        if self.omega_p <= 0 or self.omega_cav <= 0:
            raise InvalidParameterError(
                f"frequencies must be positive (omega_p={self.omega_p}, omega_cav={self.omega_cav})"
            )
        if self.g_p < 0:
            raise InvalidParameterError(f"g_p must be >= 0, got {self.g_p}")
        if int(self.n_fock) < 4:
            raise InvalidParameterError(f"n_fock must be >= 4, got {self.n_fock}")

    @property
    def layout(self) -> HilbertLayout:
        return HilbertLayout.canonical(self.n_fock, n_qubits=0)

    @property
    def dim(self) -> int:
        return 2 * self.n_fock


@dataclass(frozen=True)
class QubitParams:
    omega_q: float
    g: float

    def __post_init__(self):
        if self.omega_q <= 0:
            raise InvalidParameterError(f"qubit frequency must be positive, got {self.omega_q}")
        if self.g < 0:
            raise InvalidParameterError(f"qubit coupling must be >= 0, got {self.g}")


@dataclass(frozen=True)
class SystemParams:
    """QRS bus plus N coupled qubits."""
    rabi: RabiParams
    qubits: Tuple[QubitParams, ...]

    def __post_init__(self):
        if len(self.qubits) < 1:
            raise InvalidParameterError("at least one qubit is required")
        object.__setattr__(self, "qubits", tuple(self.qubits))

    @classmethod
    def two_qubit(
        cls,
        omega_p: float,
        g_p: float,
        omega_q1: float,
        omega_q2: float,
        g1: float,
        g2: float,
        n_fock: int = DEFAULT_N_FOCK,
    ) -> "SystemParams":
        return cls(
            RabiParams(omega_p=omega_p, g_p=g_p, n_fock=n_fock),
            (QubitParams(omega_q1, g1), QubitParams(omega_q2, g2)),
        )

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    @property
    def layout(self) -> HilbertLayout:
        return HilbertLayout.canonical(self.rabi.n_fock, self.n_qubits)

    @property
    def omegas(self) -> List[float]:
        return [q.omega_q for q in self.qubits]

    @property
    def couplings(self) -> List[float]:
        return [q.g for q in self.qubits]

    @property
    def exchange_symmetric(self) -> bool:
        """True when two identical qubits make the Hamiltonian swap-symmetric."""
        if self.n_qubits != 2:
            return False
        q1, q2 = self.qubits
        return q1.omega_q == q2.omega_q and q1.g == q2.g

    def with_value(self, name: str, value: float) -> "SystemParams":
        """Copy with one named parameter replaced (the sweep variables)."""
        if name == "omega_p":
            return replace(self, rabi=replace(self.rabi, omega_p=float(value)))
        if name == "g_p":
            return replace(self, rabi=replace(self.rabi, g_p=float(value)))
        if name == "n_fock":
            return replace(self, rabi=replace(self.rabi, n_fock=int(value)))
        if name == "delta":
            qubits = tuple(replace(q, omega_q=float(value)) for q in self.qubits)
            return replace(self, qubits=qubits)
        if name == "g":
            qubits = tuple(replace(q, g=float(value)) for q in self.qubits)
            return replace(self, qubits=qubits)
        for prefix, attr in (("omega_q", "omega_q"), ("g", "g")):
            suffix = name[len(prefix):]
            if name.startswith(prefix) and suffix.isdigit():
                n = int(suffix)
                if not 1 <= n <= self.n_qubits:
                    raise InvalidParameterError(f"no qubit {n} for sweep variable {name!r}")
                qubits = list(self.qubits)
                qubits[n - 1] = replace(qubits[n - 1], **{attr: float(value)})
                return replace(self, qubits=tuple(qubits))
        raise InvalidParameterError(
            f"unknown sweep variable {name!r}; expected one of {', '.join(SWEEP_NAMES)}"
        )

    def coupling_warnings(self) -> List[str]:
        """Messages for qubit couplings that are not small against g_p."""
        warnings = []
        for n, q in enumerate(self.qubits, 1):
            if q.g > WEAK_COUPLING_RATIO * self.rabi.g_p:
                warnings.append(
                    f"g{n}={q.g:g} is not small against g_p={self.rabi.g_p:g}; "
                    "dispersive estimates may be inaccurate"
                )
        return warnings

    def as_dict(self) -> Dict[str, Any]:
        return {
            "rabi": asdict(self.rabi),
            "qubits": [asdict(q) for q in self.qubits],
        }


def sweep_values(s: SystemParams, name: str, grid: Sequence[float]) -> List[SystemParams]:
    return [s.with_value(name, value) for value in grid]
