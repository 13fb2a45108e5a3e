"""Script to verify project setup and basic functionality."""

import math
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.config import settings
from app.utils.logger import setup_logger


def print_section(title):
    """Print a section header."""
    print(f"\n{'=' * 60}")
    print(f"  {title}")
    print('=' * 60)


def print_success(message):
    """Print success message."""
    print(f"✓ {message}")


def print_error(message):
    """Print error message."""
    print(f"✗ {message}")


def print_info(message):
    """Print info message."""
    print(f"  {message}")


def verify_imports():
    """Verify that all modules can be imported."""
    print_section("Verifying Imports")

    modules = [
        "numpy",
        "scipy",
        "pydantic",
        "pydantic_settings",
        "loguru",
        "app.config",
        "app.main",
        "app.api.cli",
        "app.api.schemas",
        "app.core.model",
        "app.core.squeeze",
        "app.core.quench",
        "app.core.dqpt",
        "app.core.observables",
        "app.services.oracle",
        "app.services.validator",
        "app.services.writers",
        "app.services.presets",
        "app.utils.logger",
    ]

    failed = []
    for module in modules:
        try:
            __import__(module)
            print_success(f"Imported: {module}")
        except Exception as e:
            print_error(f"Failed to import {module}: {e}")
            failed.append((module, str(e)))

    return len(failed) == 0


def verify_config():
    """Verify configuration."""
    print_section("Verifying Configuration")

    all_ok = True
    if settings.DEFAULT_SITES % 2:
        print_error(f"DEFAULT_SITES must be even, got {settings.DEFAULT_SITES}")
        all_ok = False
    if not settings.ED_MIN_SITES <= settings.ED_MAX_SITES:
        print_error("ED_MIN_SITES exceeds ED_MAX_SITES")
        all_ok = False
    if settings.ED_KERNEL not in ("discrete", "integral"):
        print_error(f"Unknown ED_KERNEL {settings.ED_KERNEL!r}")
        all_ok = False

    print_info(f"App Name: {settings.APP_NAME}")
    print_info(f"Environment: {settings.ENV}")
    print_info(f"Default chain length: {settings.DEFAULT_SITES}")
    print_info(f"Root scan resolution: {settings.ROOT_RESOLUTION}")
    print_info(f"ED kernel: {settings.ED_KERNEL}")
    print_info(f"Log Level: {settings.LOG_LEVEL}")
    if all_ok:
        print_success("Configuration is consistent")
    return all_ok


def verify_critical_time():
    """Check the first critical time of the 1.5 -> 0.5 Ising quench."""
    print_section("Verifying Critical Time")

    try:
        from app.core.dqpt import critical_momenta, critical_times
        from app.entities.params import QuenchSpec, SqueezeSpec

        q = QuenchSpec.from_values(1.5, 1.0, 0.5, 1.0)
        cs = critical_times(critical_momenta(q, SqueezeSpec()), q, 0)
        expected = math.pi / (2.0 * math.sqrt(0.375))
        t_c = cs.sorted_times()[0]
        print_info(f"t_c = {t_c:.9f} (analytic {expected:.9f})")
        if abs(t_c - expected) < 1e-9:
            print_success("Critical time matches")
            return True
        print_error("Critical time mismatch")
        return False
    except Exception as e:
        print_error(f"Critical time check failed: {e}")
        return False


def verify_oracle():
    """Compare the momentum-space rate with a 4-site exact diagonalization."""
    print_section("Verifying Exact Diagonalization")

    try:
        import numpy as np

        from app.core.dqpt import rate_function
        from app.core.model import build_grid
        from app.entities.params import QuenchSpec, SqueezeSpec
        from app.services.oracle import spin_ed_rate

        q = QuenchSpec.from_values(1.5, 1.0, 0.5, 1.0)
        times = np.linspace(0.0, 2.0, 21)
        ed = spin_ed_rate(q, SqueezeSpec(), times, 4)
        momentum = rate_function(q, SqueezeSpec(), build_grid(4), times)
        error = float(np.max(np.abs(ed.values - momentum.values)))
        print_info(f"max |lambda_ED - lambda_k| = {error:.3e}")
        if error < settings.ED_ORACLE_TOL:
            print_success("ED oracle agrees")
            return True
        print_error("ED oracle disagrees")
        return False
    except Exception as e:
        print_error(f"ED check failed: {e}")
        return False


def main():
    """Run all verification checks."""
    print("\n" + "=" * 60)
    print("  Squeezed DQPT - Project Verification")
    print("=" * 60)

    setup_logger(
        log_file=settings.LOG_FILE,
        log_level=settings.LOG_LEVEL,
    )

    results = {}
    results["imports"] = verify_imports()
    results["config"] = verify_config()
    results["critical time"] = verify_critical_time()
    results["oracle"] = verify_oracle()

    print_section("Verification Summary")

    total = len(results)
    passed = sum(1 for v in results.values() if v)

    for name, result in results.items():
        status = "PASS" if result else "FAIL"
        symbol = "✓" if result else "✗"
        print(f"{symbol} {name.capitalize()}: {status}")

    print(f"\nResult: {passed}/{total} checks passed")

    if passed == total:
        print("\n" + "=" * 60)
        print("  All checks passed! Project is ready to run.")
        print("=" * 60)
        print("\nNext steps:")
        print("  1. Full oracle report: squeezed-dqpt validate")
        print("  2. Reproduce figures: python scripts/reproduce_figures.py")
        print("  3. Run tests: pytest")
        return 0
    else:
        print("\n" + "=" * 60)
        print("  Some checks failed. Please fix the issues above.")
        print("=" * 60)
        return 1


if __name__ == "__main__":
    sys.exit(main())
