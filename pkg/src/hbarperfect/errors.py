"""Error types shared by every module.

Each error carries a short machine code and a context dict so the CLI can
emit ``{code, message, context}`` without knowing the concrete class.
"""


class HbarError(Exception):
    code = "Error"

    def __init__(self, message="", **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_json(self):
        return {"code": self.code, "message": self.message, "context": self.context}


def _make(name, doc):
    return type(name, (HbarError,), {"code": name, "__doc__": doc})


MalformedGraph6 = _make("MalformedGraph6", "graph6 text could not be parsed.")
UnsupportedSize = _make("UnsupportedSize", "Graph order outside the supported range.")
SizeOverflow = _make("SizeOverflow", "Result would exceed a size cap.")
VertexOutOfRange = _make("VertexOutOfRange", "Vertex index not in the graph.")
EmptySet = _make("EmptySet", "An empty vertex set was given where one is required.")
NotAlternating = _make("NotAlternating", "Matrix is not symmetric with zero diagonal.")
LengthMismatch = _make("LengthMismatch", "Pauli strings have different lengths.")
NegativeWeight = _make("NegativeWeight", "A weight entry is negative.")
DimMismatch = _make("DimMismatch", "Vector length does not match the graph order.")
DegenerateWeights = _make("DegenerateWeights", "All weights are zero.")
BudgetExceeded = _make("BudgetExceeded", "Requested computation exceeds the configured budget.")
NotCertified = _make("NotCertified", "Graph is not certified hbar-perfect.")
DomainError = _make("DomainError", "Argument outside the valid domain.")
SolverStalled = _make("SolverStalled", "Numerical solver did not reach tolerance.")
Infeasible = _make("Infeasible", "Optimization problem is infeasible.")
NoGoodSign = _make("NoGoodSign", "No sign pattern reproduces the target expectations.")
GraphMismatch = _make("GraphMismatch", "String sets have different frustration graphs.")
NotDistribution = _make("NotDistribution", "Input is not a probability vector.")
BadDimension = _make("BadDimension", "Density matrix has the wrong dimension.")
NonCommutingStabilizers = _make("NonCommutingStabilizers", "Stabilizers must pairwise commute.")
IoError = _make("IoError", "Input file could not be read.")
