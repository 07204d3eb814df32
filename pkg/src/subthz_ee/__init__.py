"""Power, complexity and throughput models for sub-THz indoor deployments."""
from .analog import (ConverterModel, DeviceModels, PhasedArrayModel, RficModel, adc_power,
                     dac_power, split_bs_power, walden_adc_power)
from .channel import Area, Geometry, PanelConfig, generate_gob, place_bs
from .complexity import (ComplexityParams, StreamConfig, WaveformNumerology, bb_rx_power,
                         bb_tx_power, complexity_report)
from .config import Config, load_config
from .deployment import ScenarioResult, compare_scenarios, evaluate_scenario, matched_pairs
from .errors import ConfigError, DomainError, OutOfRangeError
from .ledger import (ComplexityEnv, PowerBreakdown, StationPowerConfig, deployment_power,
                     station_power)
from .sim import Scenario, SimConfig, SimStats, run_scenario, sweep

__all__ = [
    "Area", "ComplexityEnv", "ComplexityParams", "Config", "ConfigError", "ConverterModel",
    "DeviceModels", "DomainError", "Geometry", "OutOfRangeError", "PanelConfig",
    "PhasedArrayModel", "PowerBreakdown", "RficModel", "Scenario", "ScenarioResult",
    "SimConfig", "SimStats", "StationPowerConfig", "StreamConfig", "WaveformNumerology",
    "adc_power", "bb_rx_power", "bb_tx_power", "compare_scenarios", "complexity_report",
    "dac_power", "deployment_power", "evaluate_scenario", "generate_gob", "load_config",
    "place_bs", "run_scenario", "split_bs_power", "station_power", "sweep", "matched_pairs",
    "walden_adc_power",
]
