"""
应用级异常层级

CLI 按类型映射退出码：InvalidInputError → 1，InvariantViolation → 3。
预算耗尽不是异常，而是搜索结论的一种（BudgetExceeded）。
"""


class PiercingError(Exception):
    """所有业务异常的基类"""

    def __init__(
        self,
        message: str,
        field: str | None = None,
        cause: Exception | None = None,
    ):
        super().__init__(message)
        self.message = message
        self.field = field  # 出错的输入字段（CLI 错误信封里回显）
        self.cause = cause


class InvalidInputError(PiercingError):
    """输入非法：格式错误、文件不可读、参数越界"""

    pass


class PreconditionError(InvalidInputError):
    """操作前置条件不满足"""

    pass


class InvariantViolation(PiercingError):
    """由定理保证的内部性质被打破，说明实现有 bug"""

    pass


class IndeterminateError(PiercingError):
    """浮点比较落在 ε 保护带内，无法给出确定结论"""

    pass
