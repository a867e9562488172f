#ifndef BECGROWTH_CSV_HPP
#define BECGROWTH_CSV_HPP

// =====================================================================
//  becgrowth/csv.hpp
//
//  Versioned CSV emission.  Every file starts with a schema comment
//  line "# becgrowth-csv <name> v<N>" followed by the fixed header row.
//  Floating values are printed with printf %.17g (17 significant
//  digits), which round-trips IEEE doubles exactly, so identical inputs
//  produce byte-identical files.  Nothing locale-dependent is used.
// =====================================================================

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace becgrowth {

inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& schema, int version,
              const std::vector<std::string>& columns)
        : out_(path, std::ios::binary), columns_(columns.size()) {
        if (!out_) throw std::runtime_error("csv: cannot open " + path + " for writing");
        out_ << "# becgrowth-csv " << schema << " v" << version << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    CsvWriter& field(double x) {
        sep();
        out_ << format_g17(x);
        return *this;
    }
    CsvWriter& field(const std::string& s) {
        sep();
        out_ << s;
        return *this;
    }
    CsvWriter& field(long long v) {
        sep();
        out_ << v;
        return *this;
    }
    CsvWriter& field(bool b) {
        sep();
        out_ << (b ? "1" : "0");
        return *this;
    }

    void end_row() {
        if (in_row_ != columns_)
            throw std::logic_error("csv: row has " + std::to_string(in_row_) + " of " +
                                   std::to_string(columns_) + " columns");
        out_ << '\n';
        in_row_ = 0;
    }

    void close() { out_.close(); }

  private:
    void sep() {
        if (in_row_) out_ << ',';
        ++in_row_;
    }
    std::ofstream out_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

}  // namespace becgrowth

#endif  // BECGROWTH_CSV_HPP
