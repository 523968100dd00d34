"""Figure rendering for geodesic reports.

matplotlib is imported lazily with the Agg backend so that report
generation never needs a display.
"""

from __future__ import annotations

def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_trajectory(traj, metric, basis_names, path: str, title: str = "") -> str:
    """Two panels: body-velocity components and the energy drift."""
    plt = _pyplot()
    gram = [[float(x) for x in row] for row in metric.gram]
    n = len(gram)

    def energy(v):
        return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))

    ts = [t for t, _ in traj.samples]
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    for i, name in enumerate(basis_names):
        ax0.plot(ts, [v[i] for _, v in traj.samples], label=name, lw=1.0)
    ax0.set_ylabel("body velocity")
    ax0.legend(loc="best", fontsize=8)
    if traj.verdict.value == "blowup_detected":
        ax0.set_yscale("symlog")
        ax0.axvline(traj.t_high, color="k", ls="--", lw=0.8)
    e0 = traj.energy0
    drift = [abs(energy(v) - e0) for _, v in traj.samples]
    ax1.semilogy(ts, [max(d, 1e-18) for d in drift], lw=1.0, color="tab:red")
    ax1.set_xlabel("flow time")
    ax1.set_ylabel("|energy - energy0|")
    if title:
        ax0.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_probe(report, path: str, title: str = "") -> str:
    """Per-sample accepted-step counts with the verdict in the title."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 3.2))
    idx = [row[0] for row in report.per_sample]
    steps = [row[3] for row in report.per_sample]
    colors = ["tab:red" if row[2] == "blowup_detected" else "tab:blue"
              for row in report.per_sample]
    ax.bar(idx, steps, color=colors, width=0.9)
    ax.set_xlabel("sample index")
    ax.set_ylabel("accepted steps")
    label = title or "completeness probe"
    ax.set_title("%s: %s" % (label, report.verdict.value), fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
