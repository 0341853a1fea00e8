"""dnsveil: post-mortem detection of protocols tunneled inside DNS traffic.

Pipeline stages, one module each:

    capture     pcap reading, Ethernet/IPv4/UDP framing, DNS wire decoding
    pairing     matching queries to their responses
    features    entropy/length feature rows and the CSV feature files
    models      from-scratch random forest and multilayer perceptron
    evaluation  stratified k-fold cross-validation and metrics
    stats       Friedman / Iman-Davenport / Holm significance procedure
    synth       labeled synthetic corpora written as real pcap files
    cli         the `dnsveil` command-line driver
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND

__all__ = ["__version__", "KERNEL_BACKEND"]
