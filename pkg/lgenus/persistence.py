"""结果与验证报告的 JSON 持久化"""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

LOG = logging.getLogger("lgenus")


def dumps(payload: Any) -> str:
    """规范的 JSON 文本：键顺序由调用方的 to_dict() 决定，不重新排序"""
    return json.dumps(payload, ensure_ascii=False, indent=2)


class ReportStore:
    """处理报告的保存和加载"""

    @staticmethod
    def save(path: Union[str, Path], payload: Any) -> Path:
        """保存到文件，目录不存在时创建"""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(dumps(payload) + "\n", encoding="utf-8")
        LOG.info("report written to %s", target)
        return target

    @staticmethod
    def load(path: Union[str, Path]) -> Optional[Any]:
        """从文件加载，失败则返回 None"""
        target = Path(path)
        if not target.exists():
            return None
        try:
            return json.loads(target.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, ValueError, KeyError, TypeError) as e:
            LOG.warning("Failed to load report %s: %s", target, e)
            return None
