# 内置实验参数
import math

PRESETS = {
    # μ² = 1, λ_1² = 0.1, λ_2² = 0.9
    "experiment1": {
        "mu": 1.0,
        "lambda1": math.sqrt(0.1),
        "lambda2": math.sqrt(0.9),
        "epsilon": 1e-3,
        "x0_min": 0.1,
        "x0_max": 3.0,
        "x0_step": 0.1,
        "scan_x0_max": 3.5,
        "q_max": 2.25,
        "a_max": 5.5,
    },
    "experiment2": {
        "mu": 1.0,
        "lambda1": 2.0,
        "lambda2": 4.0,
        "epsilon": 1e-3,
        "x0_min": 0.2,
        "x0_max": 7.0,
        "x0_step": 0.2,
        # 激活区间中点 (步长 0.2 的网格落不进窄区间)
        "x0_extra": [3.32, 4.353, 5.25, 6.597],
        "q_max": 12.25,
        "a_max": 42.0,
    },
    # λ_i²/μ² 为 experiment2 的两倍
    "experiment3": {
        "mu": math.sqrt(2.0) / 2.0,
        "lambda1": 2.0,
        "lambda2": 4.0,
        "epsilon": 1e-2,
        "x0_min": 0.1,
        "x0_max": 4.5,
        "x0_step": 0.1,
        "x0_extra": [1.008, 2.93, 2.94, 2.955, 4.2236],
        "q_max": 10.125,
        "a_max": 54.0,
    },
    "quartic_unstable": {
        "mu": 1.0,
        "lambda1": 1.0,
        "lambda2": 2.0,
        "epsilon": 1e-3,
        "potential": "quartic",
        "x0": 0.5,
        "x0_min": 0.1,
        "x0_max": 1.0,
        "x0_step": 0.1,
    },
    # 大 ε: 能量可以从残余模态流回主模态
    "quartic_backflow": {
        "mu": 1.0,
        "lambda1": math.sqrt(2.0),
        "lambda2": 2.0,
        "epsilon": 0.5,
        "potential": "quartic",
        "x0": 1.0,
        "x0_min": 0.5,
        "x0_max": 1.5,
        "x0_step": 0.5,
    },
    "quartic_stable": {
        "mu": 1.0,
        "lambda1": math.sqrt(2.0),
        "lambda2": 2.0,
        "epsilon": 1e-3,
        "potential": "quartic",
        "x0": 10.0,
        "x0_min": 2.0,
        "x0_max": 12.0,
        "x0_step": 2.0,
    },
    "weighted_example": {
        "mu": 1.0,
        "lambda1": math.sqrt(0.1),
        "lambda2": math.sqrt(0.9),
        "epsilon": 1e-3,
        "potential": "weighted",
        "gamma": 2.0,
        "beta": 1.0,
        "x0_min": 0.1,
        "x0_max": 3.0,
        "x0_step": 0.1,
        "q_max": 4.5,
        "a_max": 10.0,
    },
}
