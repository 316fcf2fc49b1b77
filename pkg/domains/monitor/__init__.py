"""
Monitor Domain - monitored runs, Gronwall tracking, verdicts and run storage
"""

from .router import router
from .schemas import MonitorRecord, RunConfig, RunResult, Verdict
from .bounds import gronwall_bound, ln_plus, loglog_gronwall
from .monitor import compose_constant, criterion_params, run, verdict
from .persistence import load_run, read_series

__all__ = [
    'router',
    'MonitorRecord',
    'RunConfig',
    'RunResult',
    'Verdict',
    'gronwall_bound',
    'ln_plus',
    'loglog_gronwall',
    'compose_constant',
    'criterion_params',
    'run',
    'verdict',
    'load_run',
    'read_series',
]
