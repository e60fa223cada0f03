#pragma once

// graph6 reading and writing for simple undirected graphs.
//
// Layout: N(n) followed by the upper triangle x(0,1), x(0,2), x(1,2),
// x(0,3), ... packed six bits per byte, most significant bit first, each
// byte offset by 63. N(n) is one byte for n <= 62 and '~' plus three bytes
// for n <= 258047. Padding bits in the final byte must be zero.

#include "reconlab/matrix_core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace reconlab {

struct Graph6Record {
  int n = 0;
  // Symmetric 0/1 adjacency, zero diagonal.
  SymmetricMatrix adjacency = SymmetricMatrix::zero(1);
};

// Throws ParseError with the byte offset of the offending character.
Graph6Record graph6_decode(std::string_view text);

std::string graph6_encode(const SymmetricMatrix& adjacency);

struct Graph6Line {
  int line_number = 0;  // 1-based
  Graph6Record record;
};

// One record per line. Blank lines, '#' comments and a leading ">>graph6<<"
// header are skipped. A malformed line throws ParseError whose offset() is
// the 1-based line number.
std::vector<Graph6Line> graph6_read_lines(std::string_view text);

// Adjacency of the cycle 0-1-...-(n-1)-0.
SymmetricMatrix cycle_adjacency(int n);
SymmetricMatrix path_adjacency(int n);
SymmetricMatrix complete_adjacency(int n);

}  // namespace reconlab
