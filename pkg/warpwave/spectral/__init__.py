from ._prune import PruneSpec, bit_reverse, is_pow2
from ._kernels import (
    complexity_model,
    dft_ref,
    fft_dif_pruned,
    fft_radix2,
    full_count,
    ifft_dit_pruned,
    ifft_radix2,
)
from ..types import OpCount

__all__ = [
    "PruneSpec",
    "OpCount",
    "bit_reverse",
    "is_pow2",
    "dft_ref",
    "fft_radix2",
    "ifft_radix2",
    "fft_dif_pruned",
    "ifft_dit_pruned",
    "full_count",
    "complexity_model",
]
