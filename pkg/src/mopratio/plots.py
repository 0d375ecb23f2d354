"""Figure rendering for the report paths (matplotlib, file output only)."""

from __future__ import annotations

from pathlib import Path

from .verify import ConvergenceReport, DensityReport


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_convergence_plot(report: ConvergenceReport, path: str | Path) -> None:
    """Error against n on log-log axes, one marker per grid row."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    errs = [max(e, 1e-320) for e in report.max_errors]
    ax.loglog(report.ns, errs, marker="o", color="tab:blue")
    ax.set_xlabel("n")
    ax.set_ylabel("max error over sample points")
    ax.set_title(f"{report.family}, {report.mode}, direction {report.k + 1}")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_density_plot(report: DensityReport, path: str | Path) -> None:
    """Zero histogram (as density bars) with the smoothed model overlaid."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    widths = [hi - lo for lo, hi in zip(report.edges[:-1], report.edges[1:])]
    heights = [m / w for m, w in zip(report.masses, widths)]
    ax.bar(
        report.centers,
        heights,
        width=widths,
        align="center",
        alpha=0.45,
        color="tab:blue",
        label=f"zeros of degree {sum(report.index)}",
    )
    ax.plot(
        report.centers,
        report.model_density,
        marker="o",
        color="tab:orange",
        label="smoothed model density",
    )
    ax.set_xlabel("t")
    ax.set_ylabel("density")
    ax.set_title(f"{report.family}: sup mass discrepancy {report.sup_discrepancy:.3f}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
