"""
统一输出信封

所有 stdout JSON 统一为：
{
    "success": true/false,
    "code": 0,
    "message": "ok",
    "data": { ... }
}

豁免输出（非信封）：
- --out / --witness-out / --provenance-out 写出的裸文档（可直接回喂 verify --file）
- --format csv 的表格流

业务错误码：code = 语义状态码 * 100，后两位预留子码扩展。
- 0     = 成功（已判定）
- 20200 = 预算耗尽，结论未定（退出码 2）
- 40000 = 输入错误（退出码 1）
- 50000 = 内部不变量被打破（退出码 3）
"""

from __future__ import annotations

import json
import sys
from typing import IO, Any, Generic, TypeVar

from pydantic import BaseModel

T = TypeVar("T")

CODE_OK = 0
CODE_BUDGET_EXCEEDED = 20200
CODE_INPUT_ERROR = 40000
CODE_INVARIANT = 50000


class Envelope(BaseModel, Generic[T]):
    """统一信封模型"""

    success: bool = True
    code: int = CODE_OK
    message: str = "ok"
    data: T | None = None


def _plain(data: Any) -> Any:
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json")
    return data


def ok(data: Any = None, message: str = "ok", code: int = CODE_OK) -> dict:
    """成功信封；预算耗尽也算成功返回，只是 code 不同"""
    return {"success": True, "code": code, "message": message, "data": _plain(data)}


def fail(code: int, message: str, data: Any = None) -> dict:
    """失败信封"""
    return {"success": False, "code": code, "message": message, "data": _plain(data)}


def emit(body: dict, stream: IO[str] | None = None) -> None:
    """键排序输出，同样的输入得到同样的字节"""
    stream = stream or sys.stdout
    stream.write(json.dumps(body, sort_keys=True, ensure_ascii=False, default=str))
    stream.write("\n")
