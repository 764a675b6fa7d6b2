#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace reputax::cli {

// Fixed-point with 9 decimals; negative zero prints as zero.
std::string fixed9(double v);

// Scientific with 6 significant decimals, for gaps and tolerances.
std::string sci(double v);

// Writes `# params: ...`, a header row, then rows; every line ends in '\n'.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& params_line,
            const std::vector<std::string>& columns);

  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_;
};

// `# params` line followed by key=value lines.
void write_key_values(const std::filesystem::path& path, const std::string& params_line,
                      const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace reputax::cli
