"""Custom exceptions for the squeezed-quench toolkit."""

from typing import Any, Dict, Optional

EXIT_INVALID_ARGUMENT = 1
EXIT_NUMERICAL_GUARD = 2


class DqptException(Exception):
    """Base exception for all toolkit errors."""

    def __init__(
        self,
        message: str,
        code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize toolkit exception.

        Args:
            message: Error message
            code: Error code
            details: Additional error details
        """
        self.message = message
        self.code = code or self.__class__.__name__
        self.details = details or {}
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        """Serialize for JSON reports."""
        return {
            "error": self.code,
            "message": self.message,
            "details": self.details,
        }

    @property
    def exit_code(self) -> int:
        """Get the process exit code for this exception."""
        return EXIT_NUMERICAL_GUARD


class InvalidArgumentException(DqptException):
    """Invalid input argument exception."""

    def __init__(self, message: str, field: Optional[str] = None):
        """
        Initialize exception.

        Args:
            message: Validation error message
            field: Argument that failed validation
        """
        details = {"field": field} if field else {}
        super().__init__(
            message=message,
            code="INVALID_ARGUMENT",
            details=details,
        )

    @property
    def exit_code(self) -> int:
        return EXIT_INVALID_ARGUMENT


class ConfigurationException(DqptException):
    """Configuration error exception."""

    def __init__(self, config_key: str, message: str):
        """
        Initialize exception.

        Args:
            config_key: Configuration key or file with the problem
            message: Error message
        """
        super().__init__(
            message=f"Configuration error for '{config_key}': {message}",
            code="CONFIGURATION_ERROR",
            details={"config_key": config_key},
        )

    @property
    def exit_code(self) -> int:
        return EXIT_INVALID_ARGUMENT


class GaplessModeException(DqptException):
    """A critical mode has vanishing post-quench energy."""

    def __init__(self, energy: float, k: Optional[float] = None):
        """
        Initialize exception.

        Args:
            energy: Post-quench quasiparticle energy of the critical mode
            k: Momentum of the gapless mode, if isolated
        """
        where = f"Critical mode k={k:.12g}" if k is not None else "Post-quench spectrum"
        super().__init__(
            message=f"{where} is gapless (energy {energy:.3e}); critical time diverges",
            code="GAPLESS_MODE",
            details={"k": k, "energy": energy},
        )


class PhaseResolutionException(DqptException):
    """Time grid too coarse to unwrap a Loschmidt phase."""

    def __init__(self, k: float, time_step: float, required_step: float):
        """
        Initialize exception.

        Args:
            k: Momentum whose phase could not be tracked
            time_step: Largest time step of the offending grid
            required_step: Largest step that keeps per-step phase change below pi
        """
        super().__init__(
            message=(
                f"Time step {time_step:.6g} too coarse to unwrap the phase of mode k={k:.12g}; "
                f"refine the grid to a step below {required_step:.6g}"
            ),
            code="PHASE_RESOLUTION",
            details={"k": k, "time_step": time_step, "required_step": required_step},
        )


class WindingResolutionException(DqptException):
    """Geometric-phase increments around the momentum loop do not close to an integer."""

    def __init__(self, t: float, winding: float, residue: float, tolerance: float):
        """
        Initialize exception.

        Args:
            t: Time at which the winding was evaluated
            winding: Unrounded winding number
            residue: Distance of the winding from the nearest integer
            tolerance: Allowed residue
        """
        super().__init__(
            message=(
                f"Winding at t={t:.6g} is {winding:.6f}, residue {residue:.3g} exceeds "
                f"{tolerance:g}; the geometric-phase increments are not resolved"
            ),
            code="WINDING_RESOLUTION",
            details={"t": t, "winding": winding, "residue": residue, "tolerance": tolerance},
        )


class SectorMismatchException(DqptException):
    """Spin-chain ground state lies outside the even fermion-parity sector."""

    def __init__(self, n_sites: int, parity: float):
        """
        Initialize exception.

        Args:
            n_sites: Chain length
            parity: Ground-state expectation of the total parity operator
        """
        super().__init__(
            message=(
                f"Ground state of the {n_sites}-site chain has parity {parity:+.6f}; "
                "the antiperiodic momentum grid does not describe it"
            ),
            code="SECTOR_MISMATCH",
            details={"n_sites": n_sites, "parity": parity},
        )


__all__ = [
    "EXIT_INVALID_ARGUMENT",
    "EXIT_NUMERICAL_GUARD",
    "DqptException",
    "InvalidArgumentException",
    "ConfigurationException",
    "GaplessModeException",
    "PhaseResolutionException",
    "WindingResolutionException",
    "SectorMismatchException",
]
