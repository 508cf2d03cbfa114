#pragma once

#include <stdexcept>
#include <string>

namespace pamflow {

// Error categories surfaced by the pipeline. Each maps to one failure
// condition named in the module contracts; tests match on the code.
enum class errc {
    io_failure,
    malformed_header,
    unsupported_encoding,
    payload_truncated,
    target_missing,
    schema_mismatch,
    row_parse_failure,
    duplicate_code,
    value_out_of_range,
    backend_failure,
    shape_mismatch,
    unknown_class_override,
    header_mismatch,
    duplicate_clip_id,
    source_not_in_inventory,
    usage_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::io_failure: return "IoFailure";
    case errc::malformed_header: return "MalformedHeader";
    case errc::unsupported_encoding: return "UnsupportedEncoding";
    case errc::payload_truncated: return "PayloadTruncated";
    case errc::target_missing: return "TargetMissing";
    case errc::schema_mismatch: return "SchemaMismatch";
    case errc::row_parse_failure: return "RowParseFailure";
    case errc::duplicate_code: return "DuplicateCode";
    case errc::value_out_of_range: return "ValueOutOfRange";
    case errc::backend_failure: return "BackendFailure";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::unknown_class_override: return "UnknownClassOverride";
    case errc::header_mismatch: return "HeaderMismatch";
    case errc::duplicate_clip_id: return "DuplicateClipId";
    case errc::source_not_in_inventory: return "SourceNotInInventory";
    case errc::usage_error: return "UsageError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace pamflow
