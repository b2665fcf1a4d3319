"""命令行配置数据结构定义"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from lgenus.cohomology import DEFAULT_MAX_BASIS

DEFAULT_MAX_I = 6
DEFAULT_MAX_K = 8

COMMANDS = ("lgenus", "charnum", "svector", "certify", "classify", "verify")


@dataclass
class CliConfig:
    """一次命令行调用的配置"""

    command: str
    output: str = "text"  # "text" or "json"
    c_assignment: str = ""  # "2:1,3:-3"，空串表示全部取 1
    max_basis: int = DEFAULT_MAX_BASIS
    workers: int = 1
    verbosity: int = 0  # 0: WARNING, 1: INFO, 2: DEBUG
    options: Dict[str, Any] = field(default_factory=dict)  # 子命令自己的参数
    report: Optional[str] = None

    def __post_init__(self) -> None:
        """验证配置"""
        if self.command not in COMMANDS:
            raise ValueError(f"Invalid command: {self.command}. Must be one of {', '.join(COMMANDS)}")
        if self.output not in ("text", "json"):
            raise ValueError(f"Invalid output: {self.output}. Must be 'text' or 'json'")
        if self.max_basis < 1:
            raise ValueError(f"max_basis must be positive, got {self.max_basis}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        self.verbosity = max(0, min(2, self.verbosity))

    @property
    def as_json(self) -> bool:
        return self.output == "json"

    @classmethod
    def get_defaults(cls, command: str = "verify") -> "CliConfig":
        """创建默认配置"""
        return cls(command=command)

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        return {
            "command": self.command,
            "output": self.output,
            "c_assignment": self.c_assignment,
            "max_basis": self.max_basis,
            "workers": self.workers,
            "verbosity": self.verbosity,
            "options": dict(self.options),
            "report": self.report,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CliConfig":
        """从字典创建"""
        return cls(
            command=data["command"],
            output=data.get("output", "text"),
            c_assignment=data.get("c_assignment", ""),
            max_basis=int(data.get("max_basis", DEFAULT_MAX_BASIS)),
            workers=int(data.get("workers", 1)),
            verbosity=int(data.get("verbosity", 0)),
            options=dict(data.get("options", {})),
            report=data.get("report"),
        )
