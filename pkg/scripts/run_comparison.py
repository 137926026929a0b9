#!/usr/bin/env python3
"""Fit every model to one dataset and print the comparison, via the library API.

Example:
    python3 scripts/generate_synthetic.py --outdir data-synth
    python3 scripts/run_comparison.py data-synth/changepoint.txt
"""

import argparse

from tsarf import (
    SrgmKind,
    TsarfConfig,
    auto_split_len,
    evaluate_model,
    fit_srgm,
    predicted_line,
    read_curve_file,
    split,
    srgm_predict,
    tsarf_forecast,
)
from tsarf.report import render_metrics_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="failure-times file or time,count CSV")
    parser.add_argument("--test-len", type=int, default=None)
    parser.add_argument("--window-size", type=int, default=None)
    parser.add_argument("--ma", type=int, default=None)
    args = parser.parse_args()

    curve, meta = read_curve_file(args.input)
    test_len = args.test_len or (args.window_size or auto_split_len(curve.n))
    parts = split(curve, test_len)
    print(f"{meta['path']}: n={curve.n}, train={parts.train.n}, test={parts.test.n}")

    reports = []
    model = tsarf_forecast(parts.train, TsarfConfig(k=args.window_size, d=args.ma))
    print(
        f"tsarf: k={model.k_used} d={model.d_used} windows={model.history.W} "
        f"line = {model.coefficients[0]:.4g} + {model.coefficients[1]:.4g} t"
    )
    reports.append(
        evaluate_model("tsarf", predicted_line(model, parts.test.times), parts.test.counts)
    )
    for kind in SrgmKind:
        fit = fit_srgm(parts.train, kind)
        label = "a={0.a:.4g} b={0.b:.4g}".format(fit.params)
        if kind is SrgmKind.WEIBULL:
            label += f" c={fit.params.c:.4g}"
        print(f"{kind.value}: {label} (sse={fit.sse:.4g})")
        reports.append(
            evaluate_model(kind.value, srgm_predict(fit, parts.test.times), parts.test.counts)
        )
    print()
    print(render_metrics_table(reports))


if __name__ == "__main__":
    main()
