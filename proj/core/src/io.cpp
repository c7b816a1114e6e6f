#include "cpst/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cpst/error.hpp"

namespace cpst {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_pair(std::ostream& os, Complex z) { os << fmt(z.real()) << ' ' << fmt(z.imag()) << '\n'; }

// Line reader that skips blank lines and tracks the line number for diagnostics.
class Lines {
 public:
  explicit Lines(std::istream& is) : is_(is) {}

  bool next(std::string& line) {
    while (std::getline(is_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) fail(std::string("unexpected end of input, expected ") + what);
    return line;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(number_) + ": " + msg);
  }

 private:
  std::istream& is_;
  int number_ = 0;
};

std::string header(Lines& in, const std::string& key) {
  const std::string line = in.require((key + "=").c_str());
  const auto eq = line.find('=');
  if (eq == std::string::npos || line.substr(0, eq) != key) in.fail("expected '" + key + "=...', got '" + line + "'");
  return line.substr(eq + 1);
}

long long parse_int(Lines& in, const std::string& text, const char* what) {
  std::istringstream ss(text);
  long long v = 0;
  std::string rest;
  if (!(ss >> v) || (ss >> rest)) in.fail(std::string("invalid ") + what + " '" + text + "'");
  return v;
}

double parse_double(Lines& in, const std::string& text, const char* what) {
  std::istringstream ss(text);
  double v = 0.0;
  std::string rest;
  if (!(ss >> v) || (ss >> rest)) in.fail(std::string("invalid ") + what + " '" + text + "'");
  if (!std::isfinite(v)) in.fail(std::string("non-finite ") + what);
  return v;
}

int parse_dim(Lines& in) {
  const long long n = parse_int(in, header(in, "n"), "dimension");
  if (n < 1 || n > 256) in.fail("dimension out of range");
  return static_cast<int>(n);
}

Complex parse_pair(Lines& in) {
  const std::string line = in.require("'re im' entry");
  std::istringstream ss(line);
  double re = 0.0, im = 0.0;
  std::string rest;
  if (!(ss >> re >> im) || (ss >> rest)) in.fail("expected 're im', got '" + line + "'");
  if (!std::isfinite(re) || !std::isfinite(im)) in.fail("non-finite entry");
  return {re, im};
}

void expect_end(Lines& in) {
  std::string extra;
  if (in.next(extra)) in.fail("unexpected trailing content '" + extra + "'");
}

template <class Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  fn(os);
  os.flush();
  if (!os) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return is;
}

}  // namespace

void write_tensor(std::ostream& os, const Tensor4& t) {
  os << "n=" << t.dim() << "\norder=4\nfield=complex\n";
  for (Complex z : t.entries()) write_pair(os, z);
}

Tensor4 read_tensor(std::istream& is) {
  Lines in(is);
  const int n = parse_dim(in);
  if (header(in, "order") != "4") in.fail("only order=4 is supported");
  if (header(in, "field") != "complex") in.fail("only field=complex is supported");
  Tensor4 t(n);
  for (std::size_t off = 0; off < t.size(); ++off) t[t.quad(off)] = parse_pair(in);
  expect_end(in);
  return t;
}

void write_mask(std::ostream& os, const SampleMask& mask) {
  os << "n=" << mask.dim() << '\n';
  for (const Quad& q : mask.quadruples())
    os << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

SampleMask read_mask(std::istream& is, bool close) {
  Lines in(is);
  const int n = parse_dim(in);
  SampleMask mask(n);
  std::string line;
  while (in.next(line)) {
    std::istringstream ss(line);
    Quad q{};
    std::string rest;
    if (!(ss >> q[0] >> q[1] >> q[2] >> q[3]) || (ss >> rest)) in.fail("expected 'i j k l', got '" + line + "'");
    for (int& v : q) {
      if (v < 1 || v > n) in.fail("index out of range in '" + line + "'");
      --v;
    }
    mask.insert(q);
  }
  if (!mask.is_ps_closed()) {
    if (!close) throw InvalidInput("mask is not closed under the partial-symmetry maps; pass the close flag to close it");
    return mask.ps_closure();
  }
  return mask;
}

void write_decomposition(std::ostream& os, const MatrixDecomposition& d) {
  os << "n=" << d.n << "\ncount=" << d.factors.size()
     << "\nconjugated_second=" << (d.conjugated_second ? "true" : "false") << '\n';
  for (const auto& f : d.factors) {
    os << "lambda=" << fmt(f.lambda) << '\n';
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j) write_pair(os, f.e(i, j));
  }
}

MatrixDecomposition read_decomposition(std::istream& is) {
  Lines in(is);
  MatrixDecomposition d;
  d.n = parse_dim(in);
  const long long count = parse_int(in, header(in, "count"), "count");
  if (count < 0 || count > static_cast<long long>(d.n) * d.n) in.fail("count out of range");
  const std::string conj = header(in, "conjugated_second");
  if (conj != "true" && conj != "false") in.fail("conjugated_second must be true or false");
  d.conjugated_second = conj == "true";
  for (long long k = 0; k < count; ++k) {
    MatrixFactor f;
    f.lambda = parse_double(in, header(in, "lambda"), "lambda");
    f.e.resize(d.n, d.n);
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j) f.e(i, j) = parse_pair(in);
    d.factors.push_back(std::move(f));
  }
  expect_end(in);
  return d;
}

void save_tensor(const std::filesystem::path& path, const Tensor4& t) {
  with_output(path, [&](std::ostream& os) { write_tensor(os, t); });
}

Tensor4 load_tensor(const std::filesystem::path& path) {
  auto is = open_input(path);
  return read_tensor(is);
}

void save_mask(const std::filesystem::path& path, const SampleMask& mask) {
  with_output(path, [&](std::ostream& os) { write_mask(os, mask); });
}

SampleMask load_mask(const std::filesystem::path& path, bool close) {
  auto is = open_input(path);
  return read_mask(is, close);
}

void save_decomposition(const std::filesystem::path& path, const MatrixDecomposition& d) {
  with_output(path, [&](std::ostream& os) { write_decomposition(os, d); });
}

MatrixDecomposition load_decomposition(const std::filesystem::path& path) {
  auto is = open_input(path);
  return read_decomposition(is);
}

}  // namespace cpst
