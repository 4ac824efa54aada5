"""Named parameter sets ``fig1a`` ... ``fig6b`` for the CLI.

Every preset pins its cutoff.  ``curves`` lists per-curve overrides on top of
the shared ``base`` values.
"""

import math

_TR_ALPHA3 = 2 * math.pi * math.sqrt(10.5)  # 2 pi sqrt(nbar + 3/2) for alpha = 3

PRESETS = {
    "fig1a": {
        "scenario": "inversion",
        "base": {"alpha": 7.0, "g": 0.5, "k": 1, "tmax": 80.0, "steps": 4001, "cutoff": 150},
        "curves": [("A", {"epsilon": 0.0, "m": 0}), ("B", {"epsilon": 1.0, "m": 0})],
    },
    "fig1b": {
        "scenario": "inversion",
        "base": {"alpha": 7.0, "g": 0.5, "k": 1, "tmax": 80.0, "steps": 4001, "cutoff": 150},
        "curves": [("A", {"epsilon": 0.0, "m": 1}), ("B", {"epsilon": 0.0, "m": 2})],
    },
    "fig1c": {
        "scenario": "pn",
        "base": {"alpha": 7.0, "cutoff": 150},
        "curves": [
            ("m=0", {"epsilon": 0.0, "m": 0}),
            ("m=1", {"epsilon": 0.0, "m": 1}),
            ("m=2", {"epsilon": 0.0, "m": 2}),
            ("cat", {"epsilon": 1.0, "m": 0}),
        ],
    },
    # quarter-revival time 5.361749 and its multiples
    "fig2a": {
        "scenario": "wigner",
        "base": {"alpha": 3.0, "epsilon": 0.0, "m": 0, "g": 1.0, "k": 1, "cutoff": 60, "t_list": [21.446996]},
        "curves": [("T_r", {})],
    },
    "fig2b": {
        "scenario": "wigner",
        "base": {"alpha": 3.0, "epsilon": 0.0, "m": 0, "g": 1.0, "k": 1, "cutoff": 60, "t_list": [10.723498]},
        "curves": [("T_r/2", {})],
    },
    "fig2c": {
        "scenario": "wigner",
        "base": {"alpha": 3.0, "epsilon": 0.0, "m": 0, "g": 1.0, "k": 1, "cutoff": 60, "t_list": [5.361749]},
        "curves": [("T_r/4", {})],
    },
    # eta = T / alpha = pi / 2
    "fig3a": {
        "scenario": "wigner-asymptotic",
        "base": {"alpha": 7.0, "t_list": [3.5 * math.pi]},
        "curves": [("T_r/4", {})],
    },
    "fig3b": {
        "scenario": "wigner",
        "base": {"alpha": 3.0, "epsilon": 0.0, "m": 0, "g": 0.5, "k": 1, "cutoff": 60, "t_list": [19.47003]},
        "curves": [("revival", {})],
    },
    "fig3c": {
        "scenario": "wigner",
        "base": {"alpha": 3.0, "epsilon": 0.0, "m": 0, "g": 0.5, "k": 1, "cutoff": 60, "t_list": [10.18]},
        "curves": [("collapse", {})],
    },
    "fig4a": {
        "scenario": "phase",
        "base": {"alpha": 3.0, "epsilon": 0.0, "m": 0, "k": 1, "cutoff": 60},
        "curves": [
            ("T_r", {"g": 1.0, "t_list": [_TR_ALPHA3]}),
            ("T_r/2", {"g": 1.0, "t_list": [_TR_ALPHA3 / 2]}),
            ("T_r/4", {"g": 1.0, "t_list": [_TR_ALPHA3 / 4]}),
            ("star", {"g": 0.5, "t_list": [19.47003]}),
            ("bell", {"g": 0.5, "t_list": [10.18]}),
        ],
    },
    "fig4b": {
        "scenario": "phase",
        "base": {"alpha": 7.0, "epsilon": 1.0, "m": 0, "g": 0.5, "k": 1, "cutoff": 150},
        "curves": [
            ("second-revival", {"t_list": [40.99995]}),
            ("collapse", {"t_list": [9.099998]}),
            ("first-revival", {"t_list": [21.00004]}),
            ("star", {"epsilon": 0.0, "m": 1, "t_list": [41.04966]}),
        ],
    },
    "fig4c": {
        "scenario": "phase",
        "base": {"alpha": 7.0, "epsilon": 1.0, "m": 0, "g": 1.0, "k": 2, "cutoff": 150},
        "curves": [
            ("pi/4", {"t_list": [math.pi / 4]}),
            ("pi/2", {"t_list": [math.pi / 2]}),
            ("pi", {"t_list": [math.pi]}),
            ("star", {"epsilon": 0.0, "k": 3, "t_list": [math.pi / 4]}),
        ],
    },
    "fig5a": {
        "scenario": "tangle-fa",
        "base": {"alpha": 7.0, "k": 1, "tmax": 60.0, "steps": 1201, "cutoff": 150},
        "curves": [
            ("short-dashed", {"epsilon": 0.0, "g": 1.0, "m": 0}),
            ("long-dashed", {"epsilon": 0.0, "g": 0.5, "m": 0}),
            ("solid-1", {"epsilon": 1.0, "g": 1.0, "m": 0}),
            ("solid-2", {"epsilon": 0.0, "g": 0.5, "m": 2}),
        ],
    },
    "fig5b": {
        "scenario": "tangle-fa",
        "base": {"alpha": 7.0, "k": 2, "epsilon": 0.0, "m": 0, "tmax": 10.0, "steps": 1001, "cutoff": 150},
        "curves": [("symmetric", {"g": 1.0}), ("asymmetric", {"g": 0.5})],
    },
    "fig5c": {
        "scenario": "tangle-fa",
        "base": {"alpha": 7.0, "epsilon": 0.0, "g": 1.0, "m": 0, "tmax": 10.0, "steps": 1001, "cutoff": 150},
        "curves": [("k=3", {"k": 3}), ("k=4", {"k": 4})],
    },
    # the one-atom tangle follows the atom coupled with g * lambda_1
    "fig6a": {
        "scenario": "tangle-ar",
        "base": {"alpha": 7.0, "k": 1, "atom": 2, "tmax": 60.0, "steps": 1201, "cutoff": 150},
        "curves": [
            ("A", {"epsilon": 0.0, "g": 0.5, "m": 0}),
            ("B", {"epsilon": 0.0, "g": 1.0, "m": 0}),
            ("C", {"epsilon": 0.0, "g": 0.5, "m": 2}),
            ("D", {"epsilon": 1.0, "g": 1.0, "m": 0}),
        ],
    },
    "fig6b": {
        "scenario": "tangle-ar",
        "base": {"alpha": 7.0, "k": 2, "atom": 2, "epsilon": 0.0, "m": 0, "tmax": 10.0, "steps": 1001,
                 "cutoff": 150},
        "curves": [("solid", {"g": 1.0}), ("dashed", {"g": 0.5})],
    },
}
