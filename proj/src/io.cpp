#include "adlab/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace adlab {
namespace {

constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

// Strips comments/whitespace; returns false for lines with no content.
bool clean_line(std::string& s) {
  if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  s.erase(0, start);
  return !s.empty();
}

GroupCtx parse_header(const std::string& line, const std::string& name, std::size_t lineno) {
  std::istringstream hs(line);
  long long p = 0, n = 0;
  if (!(hs >> p >> n)) fail(name, lineno, "header must be \"p n\"");
  std::string extra;
  if (hs >> extra) fail(name, lineno, "header must be \"p n\"");
  if (p < 2 || p > 36) fail(name, lineno, "p must be a prime in [2, 36] for file I/O");
  if (n < 1) fail(name, lineno, "n must be at least 1");
  try {
    return GroupCtx(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n));
  } catch (const std::exception& e) {
    fail(name, lineno, e.what());
  }
}

std::uint64_t parse_digits(const GroupCtx& ctx, const std::string& s, const std::string& name,
                           std::size_t lineno) {
  if (s.size() != ctx.n()) {
    fail(name, lineno,
         "expected " + std::to_string(ctx.n()) + " digits, got " + std::to_string(s.size()));
  }
  // Lines are ordinary base-p numerals: leftmost character = most significant digit.
  std::vector<std::uint32_t> coords(ctx.n());
  for (std::uint32_t j = 0; j < ctx.n(); ++j) {
    const int v = digit_value(s[j]);
    if (v < 0 || static_cast<std::uint32_t>(v) >= ctx.p()) {
      fail(name, lineno, std::string("digit '") + s[j] + "' out of range for p");
    }
    coords[ctx.n() - 1 - j] = static_cast<std::uint32_t>(v);
  }
  return ctx.encode(coords.data());
}

}  // namespace

std::string format_element(const GroupCtx& ctx, std::uint64_t index) {
  std::vector<std::uint32_t> coords(ctx.n());
  ctx.decode(index, coords.data());
  std::string s(ctx.n(), '0');
  for (std::uint32_t j = 0; j < ctx.n(); ++j) s[j] = kDigits[coords[ctx.n() - 1 - j]];
  return s;
}

std::uint64_t parse_element(const GroupCtx& ctx, const std::string& digits,
                            const std::string& where) {
  return parse_digits(ctx, digits, where, 0);
}

FpSet load_set(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (clean_line(line)) break;
    line.clear();
  }
  if (line.empty()) fail(name, lineno, "missing header");
  const GroupCtx ctx = parse_header(line, name, lineno);
  FpSet a(ctx);
  while (std::getline(in, line)) {
    ++lineno;
    if (!clean_line(line)) continue;
    a.insert(parse_digits(ctx, line, name, lineno));
  }
  return a;
}

FpSet load_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  return load_set(in, path);
}

void save_set(std::ostream& out, const FpSet& a) {
  const GroupCtx& ctx = a.ctx();
  if (ctx.p() > 36) throw std::invalid_argument("save_set: file format needs p <= 36");
  out << ctx.p() << ' ' << ctx.n() << '\n';
  a.for_each([&](std::uint64_t x) { out << format_element(ctx, x) << '\n'; });
}

void save_set_file(const std::string& path, const FpSet& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  save_set(out, a);
}

FnTable load_fn(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (clean_line(line)) break;
    line.clear();
  }
  if (line.empty()) fail(name, lineno, "missing header");
  const GroupCtx ctx = parse_header(line, name, lineno);

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> table(ctx.order(), kUnset);
  std::uint64_t filled = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!clean_line(line)) continue;
    std::istringstream ls(line);
    std::string xs, ys, extra;
    if (!(ls >> xs >> ys) || (ls >> extra)) {
      fail(name, lineno, "expected \"x_digits f(x)_digits\"");
    }
    const std::uint64_t x = parse_digits(ctx, xs, name, lineno);
    const std::uint64_t y = parse_digits(ctx, ys, name, lineno);
    if (table[x] != kUnset) fail(name, lineno, "duplicate entry for argument " + xs);
    table[x] = static_cast<std::uint32_t>(y);
    ++filled;
  }
  if (filled != ctx.order()) {
    throw std::runtime_error(name + ": missing entries (" + std::to_string(filled) + " of " +
                             std::to_string(ctx.order()) + " arguments defined)");
  }
  return FnTable(ctx, std::move(table));
}

FnTable load_fn_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  return load_fn(in, path);
}

void save_fn(std::ostream& out, const FnTable& f) {
  const GroupCtx& ctx = f.ctx;
  if (ctx.p() > 36) throw std::invalid_argument("save_fn: file format needs p <= 36");
  out << ctx.p() << ' ' << ctx.n() << '\n';
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    out << format_element(ctx, x) << ' ' << format_element(ctx, f.table[x]) << '\n';
  }
}

void save_fn_file(const std::string& path, const FnTable& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  save_fn(out, f);
}

}  // namespace adlab
