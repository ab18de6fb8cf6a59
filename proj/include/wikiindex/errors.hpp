#pragma once

#include <stdexcept>
#include <string>

namespace wikiindex {

// Base for every error the library reports. Callers that only need a message
// can catch this; the CLI maps each concrete type to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };
class InputError : public Error { using Error::Error; };

// content_source
class PageNotFound : public Error { using Error::Error; };
class NetworkError : public Error { using Error::Error; };
class RedirectLoop : public Error { using Error::Error; };
class CorpusError : public Error { using Error::Error; };

// page_analysis
class ParseError : public Error { using Error::Error; };

// sounding_crawler
class SeedNotFound : public Error { using Error::Error; };
class CheckpointCorrupt : public Error { using Error::Error; };

// wiki_index
class InvalidFunction : public Error { using Error::Error; };

// graph_metrics
class EmptyGraph : public Error { using Error::Error; };

// exporter
class UnsupportedFormat : public Error { using Error::Error; };

}  // namespace wikiindex
