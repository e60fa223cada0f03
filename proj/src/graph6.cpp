#include "reconlab/graph6.hpp"

#include "reconlab/error.hpp"

#include <cstddef>
#include <string>

namespace reconlab {

namespace {

constexpr int kBias = 63;
constexpr int kMaxByte = 126;
constexpr int kShortLimit = 62;
constexpr long kLongLimit = 258047;

int sextet(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) {
    throw Error(ErrorKind::ParseError, "truncated graph6 record",
                static_cast<long>(pos));
  }
  const int c = static_cast<unsigned char>(text[pos]);
  if (c < kBias || c > kMaxByte) {
    throw Error(ErrorKind::ParseError,
                "byte " + std::to_string(c) + " outside graph6 range [63,126]",
                static_cast<long>(pos));
  }
  return c - kBias;
}

}  // namespace

Graph6Record graph6_decode(std::string_view text) {
  std::size_t pos = 0;
  long n = 0;
  if (!text.empty() && text[0] == '~') {
    if (text.size() > 1 && text[1] == '~') {
      throw Error(ErrorKind::ParseError, "8-byte graph6 size form not supported", 1);
    }
    n = (static_cast<long>(sextet(text, 1)) << 12) |
        (static_cast<long>(sextet(text, 2)) << 6) | sextet(text, 3);
    if (n <= kShortLimit) {
      throw Error(ErrorKind::ParseError, "long size form used for n <= 62", 0);
    }
    pos = 4;
  } else {
    n = sextet(text, 0);
    pos = 1;
  }
  if (n < 1) {
    throw Error(ErrorKind::ParseError, "graph with zero vertices", 0);
  }
  if (n > kLongLimit) {
    throw Error(ErrorKind::ParseError, "vertex count too large", 0);
  }

  const long bits = n * (n - 1) / 2;
  const long nbytes = (bits + 5) / 6;
  Matrix adj = Matrix::Zero(n, n);
  long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const std::size_t byte_pos = pos + static_cast<std::size_t>(k / 6);
      const int value = sextet(text, byte_pos);
      if ((value >> (5 - k % 6)) & 1) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
    }
  }
  if (bits % 6 != 0) {
    const std::size_t last = pos + static_cast<std::size_t>(nbytes - 1);
    const int pad_mask = (1 << (6 - bits % 6)) - 1;
    if (sextet(text, last) & pad_mask) {
      throw Error(ErrorKind::ParseError, "nonzero padding bits",
                  static_cast<long>(last));
    }
  }
  const std::size_t end = pos + static_cast<std::size_t>(nbytes);
  if (text.size() > end) {
    throw Error(ErrorKind::ParseError, "trailing bytes after graph6 record",
                static_cast<long>(end));
  }
  return Graph6Record{static_cast<int>(n), SymmetricMatrix(std::move(adj))};
}

std::string graph6_encode(const SymmetricMatrix& adjacency) {
  const int n = adjacency.n();
  std::string out;
  if (n <= kShortLimit) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= kLongLimit) {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
    out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
    out.push_back(static_cast<char>((n & 63) + kBias));
  } else {
    throw Error(ErrorKind::InvalidArgument, "graph too large for graph6");
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      const double v = adjacency(i, j);
      if (v != 0.0 && v != 1.0) {
        throw Error(ErrorKind::InvalidArgument, "graph6 needs a 0/1 adjacency matrix");
      }
      acc = (acc << 1) | (v == 1.0 ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kBias));
  return out;
}

std::vector<Graph6Line> graph6_read_lines(std::string_view text) {
  std::vector<Graph6Line> out;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    ++line_number;
    start = stop + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
    if (line.empty() || line.front() == '#') continue;
    try {
      out.push_back({line_number, graph6_decode(line)});
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_number) + ": " + e.what(),
                  line_number);
    }
  }
  return out;
}

SymmetricMatrix cycle_adjacency(int n) {
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const int next = (k + 1) % n;
    if (next == k) continue;
    m(k, next) = 1.0;
    m(next, k) = 1.0;
  }
  return SymmetricMatrix(std::move(m));
}

SymmetricMatrix path_adjacency(int n) {
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    m(k, k + 1) = 1.0;
    m(k + 1, k) = 1.0;
  }
  return SymmetricMatrix(std::move(m));
}

SymmetricMatrix complete_adjacency(int n) {
  Matrix m = Matrix::Ones(n, n);
  m.diagonal().setZero();
  return SymmetricMatrix(std::move(m));
}

}  // namespace reconlab
