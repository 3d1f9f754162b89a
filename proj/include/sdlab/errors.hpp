#pragma once

#include <stdexcept>
#include <string>

namespace sdlab {

// Every library failure derives from Error and carries a stable kind string,
// which the CLI copies into its JSON error body.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SDLAB_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

SDLAB_DEFINE_ERROR(ParseError);
SDLAB_DEFINE_ERROR(CyclicQuiver);
SDLAB_DEFINE_ERROR(DimensionMismatch);
SDLAB_DEFINE_ERROR(DisconnectedQuiver);
SDLAB_DEFINE_ERROR(NotDynkin);
SDLAB_DEFINE_ERROR(QuiverMismatch);
SDLAB_DEFINE_ERROR(NotARoot);
SDLAB_DEFINE_ERROR(NotIndecomposable);
SDLAB_DEFINE_ERROR(CatalogMiss);
SDLAB_DEFINE_ERROR(CatalogIncomplete);
SDLAB_DEFINE_ERROR(BudgetExceeded);
SDLAB_DEFINE_ERROR(ZeroObject);
SDLAB_DEFINE_ERROR(NotAStabilityFunction);
SDLAB_DEFINE_ERROR(NotAllSemistable);
SDLAB_DEFINE_ERROR(HeartEscape);
SDLAB_DEFINE_ERROR(HeartMismatch);
SDLAB_DEFINE_ERROR(GldimTooLarge);
SDLAB_DEFINE_ERROR(NotConnectedSubset);
SDLAB_DEFINE_ERROR(Disconnected);
SDLAB_DEFINE_ERROR(GenusTooSmall);
SDLAB_DEFINE_ERROR(ZeroClass);
SDLAB_DEFINE_ERROR(EmptyGrid);
SDLAB_DEFINE_ERROR(ConfigError);

#undef SDLAB_DEFINE_ERROR

} // namespace sdlab
