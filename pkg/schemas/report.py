# schemas/report.py

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class ReportTable(BaseModel):
    title: str
    columns: List[str]
    rows: List[List[str]] = Field(default_factory=list)

    def render(self) -> str:
        widths = [len(c) for c in self.columns]
        for row in self.rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        lines = [self.title]
        lines.append("  ".join(c.ljust(w) for c, w in zip(self.columns, widths)).rstrip())
        for row in self.rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        return "\n".join(lines)


class RunReport(BaseModel):
    """Outcome of one command; identical inputs give identical output unless wall time is requested."""
    command: str
    status: str = "ok"
    inputs: Dict[str, str] = Field(default_factory=dict)
    conventions: List[str] = Field(default_factory=list)
    values: Dict[str, str] = Field(default_factory=dict)
    tables: List[ReportTable] = Field(default_factory=list)
    truncated_degrees: List[int] = Field(default_factory=list)
    messages: List[str] = Field(default_factory=list)
    wall_time: Optional[float] = None

    def render_text(self) -> str:
        lines = [f"command: {self.command}", f"status: {self.status}"]
        for path, digest in sorted(self.inputs.items()):
            lines.append(f"input: {path} sha256={digest}")
        if self.conventions:
            lines.append("conventions:")
            lines.extend(f"  - {c}" for c in self.conventions)
        for key, value in self.values.items():
            lines.append(f"{key}: {value}")
        if self.truncated_degrees:
            lines.append("truncation-affected degrees: " + ", ".join(str(d) for d in self.truncated_degrees))
        for table in self.tables:
            lines.append("")
            lines.append(table.render())
        if self.messages:
            lines.append("")
            lines.extend(self.messages)
        if self.wall_time is not None:
            lines.append(f"wall time: {self.wall_time:.3f}s")
        return "\n".join(lines) + "\n"

    def render_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"
