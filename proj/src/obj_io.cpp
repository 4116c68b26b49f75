#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gspline/errors.hpp"
#include "gspline/mesh.hpp"

namespace gspline {

namespace {

int parse_index(const std::string& token, std::size_t n_vertices, int line_no) {
  // Accept "i", "i/t", "i//n", "i/t/n"; only the position index matters.
  const std::string head = token.substr(0, token.find('/'));
  int idx = 0;
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
  if (ec != std::errc() || ptr != head.data() + head.size() || idx == 0)
    throw FormatError("line " + std::to_string(line_no) + ": bad face index '" + token + "'");
  if (idx < 0) idx = static_cast<int>(n_vertices) + idx + 1;  // relative index
  return idx - 1;
}

}  // namespace

ControlNet load_obj(std::istream& in) {
  std::vector<Vec3> positions;
  std::vector<Quad> faces;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x() >> p.y() >> p.z()))
        throw FormatError("line " + std::to_string(line_no) + ": malformed vertex");
      positions.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) idx.push_back(parse_index(tok, positions.size(), line_no));
      if (idx.size() != 4)
        throw FormatError("line " + std::to_string(line_no) + ": face with " +
                          std::to_string(idx.size()) + " vertices; only quads are supported");
      faces.push_back({idx[0], idx[1], idx[2], idx[3]});
    }
  }
  if (faces.empty()) throw EmptyError("OBJ contains no faces");
  CNet cnet(positions.size(), std::move(faces));
  return ControlNet(std::move(cnet), std::move(positions));
}

ControlNet load_obj_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return load_obj(in);
}

void write_obj(std::ostream& out, const ControlNet& net) {
  out << std::setprecision(17);
  for (const Vec3& p : net.positions) out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const Quad& q : net.cnet.faces())
    out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void write_obj_file(const std::string& path, const ControlNet& net) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  write_obj(out, net);
}

}  // namespace gspline
