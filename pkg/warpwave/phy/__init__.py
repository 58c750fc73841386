from .qam import bits_per_symbol, constellation, qam_demap, qam_map
from .transmitters import SplitPlan, pulse_matrix, split_plan, tx_filterbank, tx_split
from .receiver import band_bins, equalize, receiver_specs, rx_chain, rx_symbols
from .baselines import (
    centered_bins,
    channel_response,
    rx_cp_dfts_ofdm,
    rx_cp_ofdm,
    rx_zt_dfts_ofdm,
    tx_cp_dfts_ofdm,
    tx_cp_ofdm,
    tx_zt_dfts_ofdm,
)
from .metrics import evm_db, papr, psd, pulse_leakage, time_profile
from ._schemes import (
    CPDFTsScheme,
    CPOFDMScheme,
    Scheme,
    WarpedScheme,
    ZTScheme,
    get_scheme,
    preset,
    preset_names,
    register_preset,
    register_scheme,
    warped_config,
)

__all__ = [
    "bits_per_symbol",
    "constellation",
    "qam_map",
    "qam_demap",
    "pulse_matrix",
    "tx_filterbank",
    "SplitPlan",
    "split_plan",
    "tx_split",
    "band_bins",
    "receiver_specs",
    "equalize",
    "rx_symbols",
    "rx_chain",
    "centered_bins",
    "channel_response",
    "tx_zt_dfts_ofdm",
    "rx_zt_dfts_ofdm",
    "tx_cp_dfts_ofdm",
    "rx_cp_dfts_ofdm",
    "tx_cp_ofdm",
    "rx_cp_ofdm",
    "papr",
    "psd",
    "time_profile",
    "evm_db",
    "pulse_leakage",
    "Scheme",
    "WarpedScheme",
    "ZTScheme",
    "CPDFTsScheme",
    "CPOFDMScheme",
    "register_scheme",
    "register_preset",
    "get_scheme",
    "preset",
    "preset_names",
    "warped_config",
]
