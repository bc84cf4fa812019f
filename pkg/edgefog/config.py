import threading

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, Field


def get_project_root() -> Path:
    """Get the project root directory"""
    return Path(__file__).resolve().parent.parent


PROJECT_ROOT = get_project_root()


class LinkCostRanges(BaseModel):
    """Integer link cost ranges per layer pair (inclusive bounds)"""

    edge_edge: Tuple[int, int] = Field((1, 4), description="Edge-Edge link cost range")
    fog_fog: Tuple[int, int] = Field((1, 2), description="Fog-Fog link cost range")
    edge_fog: Tuple[int, int] = Field((4, 8), description="Edge-Fog link cost range")


class GeneratorSettings(BaseModel):
    """Edge-Fog simulator defaults"""

    edge_fraction: float = Field(0.6, description="Share of devices in the Edge layer")
    fog_fraction: float = Field(0.4, description="Share of devices in the Fog layer")
    edge_power_range: Tuple[int, int] = Field(
        (2, 5), description="Processing power range of Edge devices"
    )
    fog_power_range: Tuple[int, int] = Field(
        (7, 9), description="Processing power range of Fog devices"
    )
    edge_density: float = Field(0.2, description="Connection density in the Edge layer")
    fog_density: float = Field(0.6, description="Connection density in the Fog layer")
    inter_density: float = Field(
        0.5, description="Connection density between Edge and Fog layers"
    )
    job_size_range: Tuple[int, int] = Field((2, 6), description="Job size range")
    dep_density: float = Field(0.2, description="Inter-dependence density between jobs")
    link_cost_ranges: LinkCostRanges = Field(default_factory=LinkCostRanges)


class SolverSettings(BaseModel):
    time_limit_ms: Optional[int] = Field(
        None, description="Default solver time limit in milliseconds (None for unlimited)"
    )
    node_limit: Optional[int] = Field(
        None, description="Default solver node limit (None for unlimited)"
    )


class BenchSettings(BaseModel):
    workers: int = Field(1, description="Worker threads for grid points")
    seeds: int = Field(10, description="Seeds per grid point")
    base_seed: int = Field(0, description="Seed that all grid seeds derive from")
    time_limit_ms: Optional[int] = Field(
        60000, description="Per-solve time limit in milliseconds"
    )


class LogSettings(BaseModel):
    level: str = Field("INFO", description="Log level for stderr")
    logfile_level: Optional[str] = Field(
        None, description="Log level for the file sink (None disables the file)"
    )


class AppConfig(BaseModel):
    generator: GeneratorSettings = Field(default_factory=GeneratorSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    bench: BenchSettings = Field(default_factory=BenchSettings)
    logging: LogSettings = Field(default_factory=LogSettings)


class Config:
    _instance = None
    _lock = threading.Lock()
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            with self._lock:
                if not self._initialized:
                    self._config = None
                    self._load_initial_config()
                    self._initialized = True

    @staticmethod
    def _get_config_path() -> Optional[Path]:
        root = PROJECT_ROOT
        config_path = root / "config" / "config.toml"
        if config_path.exists():
            return config_path
        example_path = root / "config" / "config.example.toml"
        if example_path.exists():
            return example_path
        return None

    def _load_config(self) -> dict:
        config_path = self._get_config_path()
        if config_path is None:
            return {}
        with config_path.open("rb") as f:
            return tomllib.load(f)

    def _load_initial_config(self):
        raw_config = self._load_config()
        self._config = AppConfig(
            generator=GeneratorSettings(**raw_config.get("generator", {})),
            solver=SolverSettings(**raw_config.get("solver", {})),
            bench=BenchSettings(**raw_config.get("bench", {})),
            logging=LogSettings(**raw_config.get("logging", {})),
        )

    @property
    def generator(self) -> GeneratorSettings:
        return self._config.generator

    @property
    def solver(self) -> SolverSettings:
        return self._config.solver

    @property
    def bench(self) -> BenchSettings:
        return self._config.bench

    @property
    def logging(self) -> LogSettings:
        return self._config.logging

    @property
    def root_path(self) -> Path:
        """Get the root path of the application"""
        return PROJECT_ROOT


config = Config()
