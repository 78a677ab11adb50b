# 全局配置
import os

# Mathieu 特征值 (Hill 三对角截断)
MIN_TRUNCATION = 50
TRUNCATION_CHECK_EXTRA = 16  # 收敛检查时追加的截断阶数
CONVERGENCE_TOL = 1e-9

# Floquet / 单值矩阵
BOUNDARY_TOLERANCE = 1e-8  # |trace| 与 2 的比较容差
MONODROMY_RTOL = 1e-10
MONODROMY_ATOL = 1e-15  # 单值矩阵积分的绝对容差，行列式误差需在 1e-9 以内

# 参数直线与特征曲线求交
Q_SCAN_STEP = 1e-3
Q_TOL = 1e-6
Q_STEP_FLOOR = 1e-8
CURVE_MARGIN = 4.0
EXTENSION_FACTOR = 4.0  # 截断区间向外延伸搜索的上限倍数

# 非线性积分
INTEGRATION_METHOD = "DOP853"
INTEGRATION_RTOL = 1e-10
INTEGRATION_ATOL = 1e-12
DRIFT_BOUND = 1e-6
DEFAULT_T_END = 400.0
MAX_SAMPLE_STEP = 0.01
SAMPLES_PER_PERIOD = 20
VERLET_STEP = 0.005

# 能量捕获检测
DEFAULT_THRESHOLD = 10.0  # 振幅增大一个数量级
NARROW_WIDTH = 0.05  # x0 宽度小于此值的激活区间视为 "narrow"
ENDPOINT_MARGIN = 0.05
# 晚于另一残余模态首次越过阈值超过此时长的模态，视为从该模态间接获得能量 (二次捕获)
SECONDARY_LAG = 200.0

# 输出
DEFAULT_OUTPUT_DIR = os.getenv("MODAL_CAPTURE_OUTPUT", "output")
DIAGRAM_RESOLUTION = 201

# 实验配置文件
ALLOWED_EXTENSIONS = {"ini", "cfg", "conf"}
