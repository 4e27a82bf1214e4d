#ifndef SPDC_CLI_CSV_HPP
#define SPDC_CLI_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>

namespace spdc::cli {

// All numeric output uses 9 significant digits so reruns compare bytewise.
std::string format_number(double v);

class CsvBuilder {
  public:
    explicit CsvBuilder(const std::string& header) { out_ << header << '\n'; }

    CsvBuilder& field(const std::string& v) {
        sep();
        out_ << v;
        return *this;
    }
    CsvBuilder& field(double v) { return field(format_number(v)); }
    CsvBuilder& field(std::int64_t v) {
        sep();
        out_ << v;
        return *this;
    }
    void end_row() {
        out_ << '\n';
        row_open_ = false;
    }

    std::string str() const { return out_.str(); }

  private:
    void sep() {
        if (row_open_) out_ << ',';
        row_open_ = true;
    }
    std::ostringstream out_;
    bool row_open_ = false;
};

// Atomic-ish write: binary mode, whole buffer at once.
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace spdc::cli

#endif
