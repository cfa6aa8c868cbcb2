#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "dnex/core_model.hpp"

namespace testing {

namespace fs = std::filesystem;

inline fs::path data_dir() { return DNEX_TEST_DATA; }
inline fs::path fixtures_dir() { return DNEX_FIXTURES; }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("dnex-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline dnex::SeedAuthor make_seed(std::string name, dnex::FieldOfScience field, std::string subfield,
                                  dnex::Region region, std::int64_t citations, std::string affiliation = "Test University") {
  dnex::SeedAuthor s;
  s.full_name = std::move(name);
  s.affiliation = std::move(affiliation);
  s.id = dnex::make_seed_id(s.full_name, s.affiliation);
  s.field = field;
  s.subfield = std::move(subfield);
  s.region = region;
  s.country = "US";
  s.citation_count = citations;
  return s;
}

}  // namespace testing
