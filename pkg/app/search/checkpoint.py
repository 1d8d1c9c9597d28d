"""
搜索断点的 JSON 序列化

sequential：保存强制前缀与 DFS 栈（每帧的分支格子、候选列表、下一个候选下标），
           恢复时按栈重放已应用的选择，之后的搜索与中断前完全一致。
parallel： 保存切分深度与已穷尽的子树编号，恢复时重新切分并跳过它们。

文件由单一写者（主进程）先写临时文件再原子替换。
"""

import json
import os
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from app.exact import format_rational, parse_rational
from app.exceptions import InvalidInputError
from app.piercing.schemas import GrowthFn, GrowthKind
from app.search.schemas import Instance

CHECKPOINT_VERSION = 1


class GrowthDocument(BaseModel):
    kind: Literal["affine", "ceil", "table"]
    d: int = 0
    gamma: str = "1"
    values: list[int] = Field(default_factory=list)

    @classmethod
    def from_growth(cls, f: GrowthFn) -> "GrowthDocument":
        return cls(kind=f.kind.value, d=f.d, gamma=format_rational(f.gamma), values=list(f.values))

    def to_growth(self) -> GrowthFn:
        kind = GrowthKind(self.kind)
        if kind is GrowthKind.AFFINE:
            return GrowthFn.affine(self.d)
        if kind is GrowthKind.CEIL:
            return GrowthFn.ceil_gamma(parse_rational(self.gamma, field="gamma"))
        return GrowthFn.table(self.values)


class FrameDocument(BaseModel):
    cell: int
    cands: list[int]
    idx: int
    applied: bool


class CheckpointDocument(BaseModel):
    version: int = CHECKPOINT_VERSION
    mode: Literal["sequential", "parallel"] = "sequential"
    order: int
    growth: GrowthDocument
    symmetry: bool = True
    forced: list[tuple[int, int]] = Field(default_factory=list)
    stack: list[FrameDocument] = Field(default_factory=list)
    split_depth: int = 0
    done: list[int] = Field(default_factory=list)
    stats: dict = Field(default_factory=dict)

    def instance(self) -> Instance:
        return Instance(N=self.order, f=self.growth.to_growth())

    def require_matches(self, instance: Instance, symmetry: bool) -> None:
        if self.order != instance.N or self.growth != GrowthDocument.from_growth(instance.f):
            raise InvalidInputError("断点文件与当前实例不一致", field="checkpoint")
        if self.symmetry != symmetry:
            raise InvalidInputError("断点文件的对称性破缺设置与当前不一致", field="checkpoint")


def save_checkpoint(doc: CheckpointDocument, path: str | Path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(doc.model_dump_json(indent=2), encoding="utf-8")
    os.replace(tmp, path)


def load_checkpoint(path: str | Path) -> CheckpointDocument:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InvalidInputError(f"无法读取断点文件：{path}", field="checkpoint", cause=e) from e
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"断点文件不是合法 JSON：{path}", field="checkpoint", cause=e) from e
    if not isinstance(raw, dict) or raw.get("version") != CHECKPOINT_VERSION:
        version = raw.get("version") if isinstance(raw, dict) else None
        raise InvalidInputError(
            f"不支持的断点版本：{version!r}", field="checkpoint.version"
        )
    try:
        return CheckpointDocument.model_validate(raw)
    except ValidationError as e:
        raise InvalidInputError(f"断点文件字段不合法：{e.errors()[0]['loc']}", field="checkpoint", cause=e) from e
