#pragma once

#include <stdexcept>
#include <string>

namespace condminer {

/// Base class for all data and configuration errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// treebank
class UnbalancedParens : public Error { public: using Error::Error; };
class EmptyNode : public Error { public: using Error::Error; };
class TrailingContent : public Error { public: using Error::Error; };

// corpus
class MissingField : public Error { public: using Error::Error; };
class BadLabel : public Error { public: using Error::Error; };
class BadParse : public Error { public: using Error::Error; };
class DuplicateId : public Error { public: using Error::Error; };

// ml
class EmptyTrainingSet : public Error { public: using Error::Error; };
class BadConfig : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };

// eval
class TooFewInstances : public Error { public: using Error::Error; };
class EmptyMatrix : public Error { public: using Error::Error; };

}  // namespace condminer
