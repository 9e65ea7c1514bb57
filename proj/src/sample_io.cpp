#include "ncfa/sample_io.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace ncfa::sample_io {

namespace {

constexpr char kMagic[4] = {'N', 'C', 'F', 'A'};
constexpr std::uint16_t kVersion = 1;

std::uint16_t group_tag(GroupId g) {
  switch (g) {
    case GroupId::SU2: return 1;
    case GroupId::SO3: return 2;
    case GroupId::Torus: return 3;
  }
  return 0;
}

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

void write_samples(const std::string& path, const groups::SampleSet& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(kMagic, 4);
  put<std::uint16_t>(out, kVersion);
  put<std::uint16_t>(out, group_tag(samples.group));
  put<std::uint16_t>(out, static_cast<std::uint16_t>(samples.torus_dim));
  put<std::uint16_t>(out, 0);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(samples.count()));
  put<std::uint64_t>(out, samples.seed);
  const Eigen::Index cols = samples.elements.cols();
  for (Eigen::Index i = 0; i < samples.count(); ++i)
    for (Eigen::Index c = 0; c < cols; ++c)
      put<double>(out, samples.elements(i, c));
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

groups::SampleSet read_samples(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("'" + path + "' is not a sample file");
  const auto version = get<std::uint16_t>(in);
  if (version != kVersion)
    throw std::runtime_error("unsupported sample file version");
  const auto tag = get<std::uint16_t>(in);
  const auto torus_dim = get<std::uint16_t>(in);
  get<std::uint16_t>(in);  // reserved
  const auto count = get<std::uint64_t>(in);
  const auto seed = get<std::uint64_t>(in);

  groups::SampleSet s;
  s.seed = seed;
  s.generator_id = "file:" + path;
  switch (tag) {
    case 1: s.group = GroupId::SU2; s.torus_dim = 0; break;
    case 2: s.group = GroupId::SO3; s.torus_dim = 0; break;
    case 3: s.group = GroupId::Torus; s.torus_dim = torus_dim; break;
    default: throw std::runtime_error("unknown group tag in sample file");
  }
  const Eigen::Index cols = (s.group == GroupId::Torus) ? torus_dim : 4;
  if (cols < 1) throw std::runtime_error("corrupt sample file header");
  s.elements.resize(static_cast<Eigen::Index>(count), cols);
  for (Eigen::Index i = 0; i < s.elements.rows(); ++i)
    for (Eigen::Index c = 0; c < cols; ++c)
      s.elements(i, c) = get<double>(in);
  if (!in) throw std::runtime_error("sample file '" + path + "' is truncated");
  return s;
}

}  // namespace ncfa::sample_io
