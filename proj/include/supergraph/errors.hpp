#pragma once

#include <stdexcept>
#include <string>

namespace supergraph {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SUPERGRAPH_DEFINE_ERROR(NAME)                    \
    struct NAME : Error {                                \
        explicit NAME(const std::string& msg = #NAME)    \
            : Error(std::string(#NAME) + ": " + msg) {}  \
    }

SUPERGRAPH_DEFINE_ERROR(MalformedMotif);
SUPERGRAPH_DEFINE_ERROR(NotTwoConnected);
SUPERGRAPH_DEFINE_ERROR(NotBalanced);
SUPERGRAPH_DEFINE_ERROR(AlphaOutOfRange);
SUPERGRAPH_DEFINE_ERROR(AlphaOneUnsupported);
SUPERGRAPH_DEFINE_ERROR(NonConvergent);
SUPERGRAPH_DEFINE_ERROR(TooManyEdges);
SUPERGRAPH_DEFINE_ERROR(KOutOfBudget);
SUPERGRAPH_DEFINE_ERROR(HostTooLarge);
SUPERGRAPH_DEFINE_ERROR(InsufficientSamples);
SUPERGRAPH_DEFINE_ERROR(DegenerateSample);
SUPERGRAPH_DEFINE_ERROR(EmptySample);
SUPERGRAPH_DEFINE_ERROR(ZeroScale);
SUPERGRAPH_DEFINE_ERROR(InfiniteVariance);
SUPERGRAPH_DEFINE_ERROR(MethodBudgetExceeded);
SUPERGRAPH_DEFINE_ERROR(ConfigInvalid);
SUPERGRAPH_DEFINE_ERROR(IoFailure);
SUPERGRAPH_DEFINE_ERROR(BudgetExceeded);

#undef SUPERGRAPH_DEFINE_ERROR

}  // namespace supergraph
