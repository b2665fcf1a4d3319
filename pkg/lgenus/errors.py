"""异常定义"""


class LGenusError(Exception):
    """所有计算错误的基类"""


class ParseError(LGenusError, ValueError):
    """迷你语言或序列化文本无法解析"""


class WeightMismatchError(LGenusError, ValueError):
    """划分的权重与流形维数不符"""


class MissingParameterError(LGenusError, KeyError):
    """代入时缺少形式参数"""

    def __str__(self) -> str:
        return Exception.__str__(self)


class SingularMatrixError(LGenusError, ArithmeticError):
    """线性方程组奇异：基假设被破坏"""


class BasisGuardError(LGenusError, MemoryError):
    """张量积模型的基超过上限"""


class ConfluenceError(LGenusError, ValueError):
    """改写规则不合流"""


class ZeroCombinationError(LGenusError, ValueError):
    """线性组合全为零"""
