#pragma once

#include <stdexcept>
#include <string>

namespace resnet {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// network construction / lookup
struct InvalidNetwork : Error { using Error::Error; };
struct DisconnectedGraph : InvalidNetwork { using InvalidNetwork::InvalidNetwork; };
struct NonpositiveConductance : InvalidNetwork { using InvalidNetwork::InvalidNetwork; };
struct SelfLoop : InvalidNetwork { using InvalidNetwork::InvalidNetwork; };
struct DuplicateEdge : InvalidNetwork { using InvalidNetwork::InvalidNetwork; };
struct UnknownVertex : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct OriginOutsideKeep : Error { using Error::Error; };
struct TooLargeForExact : Error { using Error::Error; };

// operators / solvers
struct LengthMismatch : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct SupportTouchesGround : Error { using Error::Error; };
struct NotSpd : Error { using Error::Error; };
struct MaxIterExceeded : Error { using Error::Error; };
struct DimensionCap : Error { using Error::Error; };

// resistance / spectral / lattice / walk
struct SameVertex : Error { using Error::Error; };
struct VertexOutsideTruncation : Error { using Error::Error; };
struct NonpositiveGap : Error { using Error::Error; };
struct RecurrentLattice : Error { using Error::Error; };
struct UnconvergedQuadrature : Error { using Error::Error; };
struct IsolatedVertex : Error { using Error::Error; };

}  // namespace resnet
