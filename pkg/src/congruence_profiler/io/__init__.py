"""Netlist, architecture, report and radar-plot serialization."""

from .architecture import parse_architecture, read_architecture, write_architecture
from .design import parse_design, write_design
from .netlist import parse_netlist, read_netlist, write_netlist
from .radar import write_radar_svg
from .report import (
    ResultRow,
    parse_path_report,
    parse_report,
    write_path_report,
    write_report,
)

__all__ = [
    "ResultRow",
    "parse_architecture",
    "parse_design",
    "parse_netlist",
    "parse_path_report",
    "parse_report",
    "read_architecture",
    "read_netlist",
    "write_architecture",
    "write_design",
    "write_netlist",
    "write_path_report",
    "write_radar_svg",
    "write_report",
]
