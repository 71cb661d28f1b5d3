#ifndef SSHQT_CHAIN_HPP
#define SSHQT_CHAIN_HPP

#include <stdexcept>

namespace sshqt {

enum class ChainKind { SingleDimerized, Interface };

/// Geometry of a dimerized chain.
///
/// Sites are stored in physical order A1,B1,A2,B2,...  (A on odd physical
/// positions, B on even ones, 1-based).  Storage is 0-based and contiguous:
/// A_k <-> index 2k-2, B_k <-> index 2k-1.
///
/// SingleDimerized: N cells -> N sites on sublattice A, N-1 on B (2N-1 total).
/// Interface: two segments of N cells each -> 2N A sites, 2N-1 B sites
/// (4N-1 total); the junction sits at B_N.
struct ChainSpec {
  ChainKind kind = ChainKind::SingleDimerized;
  int n_cells = 0;

  static ChainSpec single(int n_cells) {
    if (n_cells < 2)
      throw std::invalid_argument("ChainSpec: single chain needs n_cells >= 2");
    return {ChainKind::SingleDimerized, n_cells};
  }
  static ChainSpec interface(int n_cells) {
    if (n_cells < 2)
      throw std::invalid_argument("ChainSpec: interface chain needs n_cells >= 2");
    return {ChainKind::Interface, n_cells};
  }

  bool is_interface() const { return kind == ChainKind::Interface; }

  int a_sites() const {
    return kind == ChainKind::SingleDimerized ? n_cells : 2 * n_cells;
  }
  int b_sites() const { return a_sites() - 1; }
  int total_sites() const { return 2 * a_sites() - 1; }
  /// Number of NNN bonds (consecutive A-site pairs).
  int nnn_bonds() const { return a_sites() - 1; }
  /// Number of NN bonds.
  int nn_bonds() const { return total_sites() - 1; }

  /// Storage index of A_k, k = 1..a_sites().
  static int a_index(int k) { return 2 * k - 2; }
  /// Storage index of B_k, k = 1..b_sites().
  static int b_index(int k) { return 2 * k - 1; }
};

}  // namespace sshqt

#endif
