"""fftpath: a self-tuning FFT planner.

Every valid arrangement of a 2**L-point transform is a path through a
weighted DAG whose edges are executable passes (radix-2/4/8 sweeps and
terminal fused register blocks).  Edge weights are measured on the host,
optionally conditioned on the immediately preceding pass; the cheapest
arrangement is a shortest path, which is then compiled, executed, and
verified against a direct double-precision DFT.
"""

from .errors import (
    ConfigError,
    CostModelError,
    FFTPathError,
    IncompleteModelError,
    ModelError,
    PlanError,
    ShapeError,
    SizeError,
    StageError,
)
from .graph import (
    Arrangement,
    CONTEXT_TAGS,
    DecompositionGraph,
    EdgeType,
    build_graph,
    enumerate_paths,
    format_graph,
    make_arrangement,
    named_arrangements,
    shortest_path,
)
from .kernels import (
    available_backends,
    bit_reversal_permutation,
    default_backend,
    fused_block_pass,
    output_permutation,
    radix2_pass,
    radix4_pass,
    radix8_pass,
    reference_dft,
)
from .measure import (
    CostModel,
    FakeClock,
    TimingConfig,
    builtin_model_names,
    load_builtin_model,
    load_cost_model,
    measure_all_edges,
    measure_edge,
    save_cost_model,
)
from .numerics import (
    SplitComplexBuffer,
    TwiddleTable,
    init_signal,
    make_twiddles,
    rel_l2_error,
)
from .planner import (
    PassRow,
    PerfReport,
    PerfRow,
    Plan,
    compare_arrangements,
    compile_plan,
    execute_plan,
    gflops,
    pass_gflops,
    per_pass_profile,
    verify_arrangements,
)

__version__ = "0.1.0"
