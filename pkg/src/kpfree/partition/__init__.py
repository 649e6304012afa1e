from kpfree.partition.corollary import partition_k_with_max_first
from kpfree.partition.exchange import (
    ExchangeState,
    SwapRecord,
    build_A,
    build_B,
    exchange_step,
    max_kpfree_partition,
    run_exchange,
)
from kpfree.partition.hitting import Exceptional, detect_odd_cycle_product, hitting_mis
from kpfree.partition.model import Partition, PartitionSpec, certify
from kpfree.partition.theorem1 import partition_k, partition_two

__all__ = [
    "Exceptional",
    "ExchangeState",
    "Partition",
    "PartitionSpec",
    "SwapRecord",
    "build_A",
    "build_B",
    "certify",
    "detect_odd_cycle_product",
    "exchange_step",
    "hitting_mis",
    "max_kpfree_partition",
    "partition_k",
    "partition_k_with_max_first",
    "partition_two",
    "run_exchange",
]
