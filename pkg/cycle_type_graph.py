"""Expected vs observed Frobenius cycle-type densities as a grouped bar chart."""
import base64
import io

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.ticker import PercentFormatter
import numpy as np
import pandas as pd

EXPECTED_COLOR = "tab:blue"
OBSERVED_COLOR = "tab:purple"
BAR_WIDTH = 0.4


def draw_cycle_type_graph(rows, title=None, path=None):
    """
    Render chebotarev_table rows and return the PNG as base64.
    Observed bars are labelled with the number of primes behind them.
    When path is given the PNG is also written there.
    """
    table = pd.DataFrame(rows, columns=["cycle_type", "expected", "observed", "count"])
    table["count"] = table["count"].fillna(0).astype(int)
    sampled = int(table["count"].sum())
    x = np.arange(len(table))

    fig, ax = plt.subplots(figsize=(9, 4.5))
    ax.bar(x - BAR_WIDTH / 2, table["expected"], BAR_WIDTH,
           label="Chebotarev density", color=EXPECTED_COLOR)
    observed = ax.bar(x + BAR_WIDTH / 2, table["observed"], BAR_WIDTH,
                      label=f"Observed ({sampled} primes)", color=OBSERVED_COLOR)
    ax.bar_label(observed, labels=[str(c) if c else "" for c in table["count"]],
                 fontsize=8, padding=2)

    ax.set_xticks(x, table["cycle_type"])
    ax.set_xlabel("Cycle type of Frobenius")
    ax.set_ylabel("Share of primes")
    ax.set_ylim(0, max(1e-9, table[["expected", "observed"]].to_numpy().max()) * 1.15)
    ax.yaxis.set_major_formatter(PercentFormatter(xmax=1.0))
    ax.set_title(title or "Frobenius cycle types")
    ax.legend(loc="upper right", frameon=False)
    fig.tight_layout()

    png = io.BytesIO()
    fig.savefig(png, format="png")
    plt.close(fig)

    if path:
        with open(path, "wb") as out:
            out.write(png.getvalue())
    return base64.b64encode(png.getvalue()).decode("ascii")
