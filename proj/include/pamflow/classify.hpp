#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pamflow/csv.hpp"
#include "pamflow/errors.hpp"
#include "pamflow/spectrogram.hpp"

namespace pamflow::classify {

// One label in the classifier's output vocabulary. The band fields are
// consumed only by the reference backend.
struct DetectionClass {
    std::string code; // unique, uppercase alphanumeric
    std::string label;
    double threshold = 0.5; // in [0, 1]
    double band_low = 0.0;  // Hz
    double band_high = 0.0; // Hz
};

// One clip's raw classifier output: independent per-class scores in
// [0, 1], ordered as the class list. Multi-label: no sum-to-one coupling.
struct ScoreRow {
    std::string clip_id;
    std::vector<double> scores;
};

struct ScoreTable {
    std::vector<std::string> codes;
    std::vector<ScoreRow> rows;
};

enum class BackendKind { reference, external };

struct BackendDescriptor {
    BackendKind kind = BackendKind::reference;
    std::string source;    // model artifact path; empty for the reference backend
    std::size_t class_count = 0;
    bool single_stream = false; // backend requires serialized predict calls
};

inline const char* kClassListHeader = "code,label,threshold,band_low_hz,band_high_hz";

inline bool valid_code(const std::string& code) {
    if (code.empty()) return false;
    for (char c : code)
        if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))) return false;
    return true;
}

inline std::vector<DetectionClass> load_class_list(const std::filesystem::path& path) {
    auto lines = csv::read_lines(path.string());
    if (lines.empty() || lines[0] != kClassListHeader)
        throw Error(errc::schema_mismatch, "expected class list header in " + path.string());

    std::vector<DetectionClass> classes;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto f = csv::split_row(lines[i], line_no);
        if (f.size() != 5)
            throw Error(errc::row_parse_failure,
                        "expected 5 fields in line " + std::to_string(line_no));
        DetectionClass cls;
        cls.code = f[0];
        cls.label = f[1];
        cls.threshold = csv::parse_double(f[2], line_no, "threshold");
        cls.band_low = csv::parse_double(f[3], line_no, "band_low_hz");
        cls.band_high = csv::parse_double(f[4], line_no, "band_high_hz");

        if (!valid_code(cls.code))
            throw Error(errc::value_out_of_range,
                        "code '" + cls.code + "' in line " + std::to_string(line_no));
        if (!seen.insert(cls.code).second) throw Error(errc::duplicate_code, cls.code);
        if (cls.threshold < 0.0 || cls.threshold > 1.0)
            throw Error(errc::value_out_of_range,
                        "threshold in line " + std::to_string(line_no));
        if (cls.band_low < 0.0 || cls.band_low >= cls.band_high)
            throw Error(errc::value_out_of_range, "band in line " + std::to_string(line_no));
        classes.push_back(std::move(cls));
    }
    return classes;
}

inline void write_class_list(const std::vector<DetectionClass>& classes,
                             const std::filesystem::path& path) {
    csv::Writer w(path.string());
    w.raw(std::string(kClassListHeader) + "\n");
    for (const auto& c : classes)
        w.row({c.code, c.label, csv::render_fixed(c.threshold, 4),
               csv::render_fixed(c.band_low, 1), csv::render_fixed(c.band_high, 1)});
    w.close();
}

// Band-energy ratio score: the fraction of a tile's squared intensity
// that falls on rows whose bin center frequency lies inside the class
// band. Stands in for a trained model with the same output contract.
inline double reference_score(const spectro::Tile& tile, const DetectionClass& cls,
                              std::uint32_t working_rate) {
    const std::size_t n_fft = 2 * (tile.height - 1);
    const double bin_hz = static_cast<double>(working_rate) / static_cast<double>(n_fft);

    double in_band = 0.0, total = 0.0;
    for (std::size_t r = 0; r < tile.height; ++r) {
        double row_energy = 0.0;
        for (std::size_t c = 0; c < tile.width; ++c) {
            const double v = tile.at(r, c);
            row_energy += v * v;
        }
        total += row_energy;
        const double center = static_cast<double>(r) * bin_hz;
        if (center >= cls.band_low && center <= cls.band_high) in_band += row_energy;
    }
    return in_band / (total + 1e-12);
}

class Backend {
public:
    virtual ~Backend() = default;
    virtual const BackendDescriptor& descriptor() const = 0;
    virtual std::vector<double> score_tile(const spectro::Tile& tile,
                                           const std::vector<DetectionClass>& classes) = 0;
};

// Deterministic band-energy backend; pure, safe for concurrent calls.
class ReferenceBackend : public Backend {
public:
    ReferenceBackend(std::uint32_t working_rate, std::size_t class_count)
        : working_rate_(working_rate) {
        desc_.kind = BackendKind::reference;
        desc_.class_count = class_count;
    }

    const BackendDescriptor& descriptor() const override { return desc_; }

    std::vector<double> score_tile(const spectro::Tile& tile,
                                   const std::vector<DetectionClass>& classes) override {
        const double nyquist = working_rate_ / 2.0;
        std::vector<double> scores;
        scores.reserve(classes.size());
        for (const auto& cls : classes) {
            if (cls.band_high > nyquist)
                throw Error(errc::backend_failure,
                            "class " + cls.code + " band exceeds Nyquist (" +
                                csv::render_fixed(nyquist, 1) + " Hz)");
            scores.push_back(reference_score(tile, cls, working_rate_));
        }
        return scores;
    }

private:
    std::uint32_t working_rate_;
    BackendDescriptor desc_;
};

// Score a batch of equally shaped tiles, one row per tile in input order.
inline std::vector<ScoreRow> predict_batch(Backend& backend,
                                           const std::vector<spectro::Tile>& tiles,
                                           const std::vector<DetectionClass>& classes) {
    if (backend.descriptor().class_count != classes.size())
        throw Error(errc::shape_mismatch,
                    "backend expects " + std::to_string(backend.descriptor().class_count) +
                        " classes, got " + std::to_string(classes.size()));
    for (const auto& t : tiles)
        if (t.height != tiles.front().height || t.width != tiles.front().width)
            throw Error(errc::shape_mismatch, "tiles differ in shape");

    std::vector<ScoreRow> rows;
    rows.reserve(tiles.size());
    for (const auto& t : tiles) {
        ScoreRow row;
        row.clip_id = spectro::clip_id(t.clip);
        row.scores = backend.score_tile(t, classes);
        for (double s : row.scores)
            if (!(s >= 0.0 && s <= 1.0))
                throw Error(errc::backend_failure, "score outside [0,1] for " + row.clip_id);
        rows.push_back(std::move(row));
    }
    return rows;
}

// -------------------------------------------------------------------------
// Scores CSV: header `clip_id,<code1>,...,<codeN>`, scores at 4 decimal
// places (round-half-even), rows sorted ascending by clip_id.
// -------------------------------------------------------------------------

inline void write_scores(std::vector<ScoreRow> rows, const std::vector<std::string>& codes,
                         const std::filesystem::path& out_path) {
    std::sort(rows.begin(), rows.end(),
              [](const ScoreRow& a, const ScoreRow& b) { return a.clip_id < b.clip_id; });
    csv::Writer w(out_path.string());
    std::vector<std::string> header{"clip_id"};
    header.insert(header.end(), codes.begin(), codes.end());
    w.row(header);
    for (const auto& r : rows) {
        std::vector<std::string> fields{r.clip_id};
        for (double s : r.scores) fields.push_back(csv::render_fixed(s, 4));
        w.row(fields);
    }
    w.close();
}

inline std::vector<std::string> class_codes(const std::vector<DetectionClass>& classes) {
    std::vector<std::string> codes;
    codes.reserve(classes.size());
    for (const auto& c : classes) codes.push_back(c.code);
    return codes;
}

inline void write_scores(const std::vector<ScoreRow>& rows,
                         const std::vector<DetectionClass>& classes,
                         const std::filesystem::path& out_path) {
    write_scores(rows, class_codes(classes), out_path);
}

inline ScoreTable read_scores(const std::filesystem::path& path) {
    auto lines = csv::read_lines(path.string());
    if (lines.empty()) throw Error(errc::schema_mismatch, "empty scores file " + path.string());
    auto header = csv::split_row(lines[0], 1);
    if (header.empty() || header[0] != "clip_id")
        throw Error(errc::schema_mismatch, "expected clip_id header in " + path.string());

    ScoreTable table;
    table.codes.assign(header.begin() + 1, header.end());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto f = csv::split_row(lines[i], line_no);
        if (f.size() != header.size())
            throw Error(errc::row_parse_failure,
                        "expected " + std::to_string(header.size()) + " fields in line " +
                            std::to_string(line_no));
        ScoreRow row;
        row.clip_id = f[0];
        for (std::size_t k = 1; k < f.size(); ++k)
            row.scores.push_back(csv::parse_double(f[k], line_no, "score"));
        table.rows.push_back(std::move(row));
    }
    return table;
}

// -------------------------------------------------------------------------
// Backend manifest: a small key=value text file naming the backend kind,
// its model artifact, and the class list it was trained against.
// -------------------------------------------------------------------------

struct BackendManifest {
    BackendDescriptor descriptor;
    std::filesystem::path classes; // class list CSV
};

inline BackendManifest read_backend_manifest(const std::filesystem::path& path) {
    auto lines = csv::read_lines(path.string());
    std::map<std::string, std::string> kv;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(errc::schema_mismatch,
                        "expected key=value in " + path.string() + " line " +
                            std::to_string(i + 1));
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }

    BackendManifest m;
    auto kind = kv.find("kind");
    if (kind == kv.end())
        throw Error(errc::schema_mismatch, "manifest missing 'kind' in " + path.string());
    if (kind->second == "reference") m.descriptor.kind = BackendKind::reference;
    else if (kind->second == "external") m.descriptor.kind = BackendKind::external;
    else
        throw Error(errc::schema_mismatch,
                    "unknown backend kind '" + kind->second + "' in " + path.string());

    if (auto it = kv.find("source"); it != kv.end()) m.descriptor.source = it->second;
    if (auto it = kv.find("classes"); it != kv.end()) {
        m.classes = it->second;
        if (m.classes.is_relative()) m.classes = path.parent_path() / m.classes;
    }
    if (auto it = kv.find("single_stream"); it != kv.end())
        m.descriptor.single_stream = it->second == "true";

    if (m.descriptor.kind == BackendKind::external && m.descriptor.source.empty())
        throw Error(errc::schema_mismatch,
                    "external backend manifest misses 'source' in " + path.string());
    return m;
}

// Instantiate a backend from its manifest. Executing an external model is
// a plug-in concern; the contract and wiring exist here, the engine does
// not ship with the pipeline.
inline std::unique_ptr<Backend> open_backend(const BackendManifest& manifest,
                                             std::uint32_t working_rate,
                                             std::size_t class_count) {
    if (manifest.descriptor.kind == BackendKind::reference)
        return std::make_unique<ReferenceBackend>(working_rate, class_count);
    throw Error(errc::backend_failure,
                "no runtime available for external backend '" + manifest.descriptor.source +
                    "'; bundle a scorer implementing the Backend interface");
}

} // namespace pamflow::classify
