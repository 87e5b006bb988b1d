import matplotlib.pyplot as plt

from altbase.analysis.ppfamily import GammaScanReport

KIND_COLORS = {
    'purely_periodic': 'tab:blue',
    'eventually_periodic': 'tab:red',
    'finite': 'tab:green',
    'truncated': 'tab:gray',
}


def plot_gamma_scan(report: GammaScanReport, ax=None, title=True, scatter_kwargs={}):
    """
    Plots every rational classified by gamma_scan at (value, denominator),
    colored by the kind of its expansion, with the first failure marked by a
    vertical line.

    Parameters
    ----------
    report: GammaScanReport
        The output of gamma_scan. Use stop_at_failure=False to see the
        rationals past the first failure.
    ax: plt.Axes
        The subplot to plot on. If None, this function will create one.
    title: bool
        Toggles a default title with qmax and the verified lower bound.
    scatter_kwargs: dict
        Keyword arguments passed directly into plt.scatter.

    Returns
    -------
    ax: plt.Axes
        The subplot object to modify the axis, labels, etc.

    Example
    -------
    | import matplotlib.pyplot as plt
    |
    | import altbase
    |
    | base = altbase.shift(altbase.pp_family(2), 2)
    | report = altbase.gamma_scan(base, 60, stop_at_failure=False)
    | ax = altbase.plot_gamma_scan(report)
    | plt.show()
    """
    if ax is None:
        _, ax = plt.subplots()

    table = report.table
    if len(table):
        for kind, group in table.groupby('kind'):
            ax.scatter(
                group['value'],
                group['denominator'],
                s=8,
                c=KIND_COLORS.get(kind, 'k'),
                label=kind.replace('_', ' '),
                **scatter_kwargs,
            )
    if report.first_failure is not None:
        ax.axvline(float(report.first_failure[0]), c='k', ls='--', label='first failure')

    ax.set_xlim(0, 1)
    ax.set_xlabel('p/q')
    ax.set_ylabel('q')
    if title:
        ax.set_title(
            f'gamma scan, q <= {report.qmax}, verified lower bound '
            f'{float(report.verified_lower):.4f}'
        )
    ax.legend(loc='upper right')
    return ax
