#include "prot/network.hpp"

#include "prot/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>

namespace prot {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_real(const std::string& text, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    std::ostringstream os;
    os << "netlist line " << line_no << ": expected a number, got '" << text << "'";
    throw BuildError(os.str());
  }
  return v;
}

// key=value parameter list following a block kind
std::map<std::string, double> parse_params(const std::vector<std::string>& tokens,
                                           size_t first, int line_no) {
  std::map<std::string, double> params;
  for (size_t i = first; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "netlist line " << line_no << ": expected key=value, got '" << tokens[i] << "'";
      throw BuildError(os.str());
    }
    const std::string key = tokens[i].substr(0, eq);
    if (params.count(key)) {
      std::ostringstream os;
      os << "netlist line " << line_no << ": duplicate parameter '" << key << "'";
      throw BuildError(os.str());
    }
    params[key] = parse_real(tokens[i].substr(eq + 1), line_no);
  }
  return params;
}

double take_param(std::map<std::string, double>& params, const std::string& key,
                  int line_no) {
  auto it = params.find(key);
  if (it == params.end()) {
    std::ostringstream os;
    os << "netlist line " << line_no << ": missing parameter '" << key << "'";
    throw BuildError(os.str());
  }
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

BlockNetwork BlockNetwork::build(const std::string& description) {
  BlockNetwork net;
  std::map<std::string, int> index_by_name;
  std::vector<std::pair<std::string, std::string>> wires;
  std::vector<int> wire_lines;

  std::istringstream is(description);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "block") {
      if (tokens.size() < 3) {
        std::ostringstream os;
        os << "netlist line " << line_no << ": expected 'block <name> <kind> ...'";
        throw BuildError(os.str());
      }
      const std::string& name = tokens[1];
      if (index_by_name.count(name)) {
        std::ostringstream os;
        os << "netlist line " << line_no << ": duplicate block '" << name << "'";
        throw BuildError(os.str());
      }
      Block blk;
      blk.name = name;
      const std::string& kind = tokens[2];
      auto params = parse_params(tokens, kind == "relay" ? 4 : 3, line_no);
      if (kind == "input") {
        blk.kind = BlockKind::Input;
      } else if (kind == "output") {
        blk.kind = BlockKind::Output;
      } else if (kind == "sum") {
        blk.kind = BlockKind::Sum;
      } else if (kind == "gain") {
        blk.kind = BlockKind::Gain;
        blk.gain = take_param(params, "k", line_no);
      } else if (kind == "relay") {
        blk.kind = BlockKind::Relay;
        if (tokens.size() < 4 ||
            (tokens[3] != "noninverting" && tokens[3] != "inverting")) {
          std::ostringstream os;
          os << "netlist line " << line_no
             << ": relay needs a polarity (noninverting|inverting)";
          throw BuildError(os.str());
        }
        blk.relay_spec.polarity = tokens[3] == "inverting" ? Polarity::Inverting
                                                           : Polarity::Noninverting;
        blk.relay_spec.set_threshold = take_param(params, "set", line_no);
        blk.relay_spec.reset_threshold = take_param(params, "reset", line_no);
        const double init = take_param(params, "init", line_no);
        if (init != 0.0 && init != 1.0) {
          std::ostringstream os;
          os << "netlist line " << line_no << ": relay init must be 0 or 1";
          throw BuildError(os.str());
        }
        blk.relay_state = static_cast<int>(init);
        try {
          blk.relay_spec.validate();
        } catch (const ConfigError& e) {
          std::ostringstream os;
          os << "netlist line " << line_no << ": " << e.what();
          throw BuildError(os.str());
        }
      } else {
        std::ostringstream os;
        os << "netlist line " << line_no << ": unknown block kind '" << kind << "'";
        throw BuildError(os.str());
      }
      if (!params.empty()) {
        std::ostringstream os;
        os << "netlist line " << line_no << ": unexpected parameter '"
           << params.begin()->first << "'";
        throw BuildError(os.str());
      }
      index_by_name[name] = static_cast<int>(net.blocks_.size());
      net.blocks_.push_back(std::move(blk));
    } else if (tokens[0] == "wire") {
      if (tokens.size() != 4 || tokens[2] != "->") {
        std::ostringstream os;
        os << "netlist line " << line_no << ": expected 'wire <src> -> <dst>'";
        throw BuildError(os.str());
      }
      wires.emplace_back(tokens[1], tokens[3]);
      wire_lines.push_back(line_no);
    } else {
      std::ostringstream os;
      os << "netlist line " << line_no << ": unknown directive '" << tokens[0] << "'";
      throw BuildError(os.str());
    }
  }

  const int n = static_cast<int>(net.blocks_.size());
  net.inputs_.assign(n, {});
  std::vector<std::vector<int>> outputs(n);
  for (size_t w = 0; w < wires.size(); ++w) {
    const auto src = index_by_name.find(wires[w].first);
    const auto dst = index_by_name.find(wires[w].second);
    if (src == index_by_name.end() || dst == index_by_name.end()) {
      std::ostringstream os;
      os << "netlist line " << wire_lines[w] << ": wire references unknown block '"
         << (src == index_by_name.end() ? wires[w].first : wires[w].second) << "'";
      throw BuildError(os.str());
    }
    net.inputs_[dst->second].push_back(src->second);
    outputs[src->second].push_back(dst->second);
  }

  for (int i = 0; i < n; ++i) {
    const Block& blk = net.blocks_[i];
    const size_t fanin = net.inputs_[i].size();
    switch (blk.kind) {
      case BlockKind::Input:
        if (net.input_index_ >= 0) throw BuildError("netlist has more than one input block");
        net.input_index_ = i;
        if (fanin != 0) throw BuildError("input block '" + blk.name + "' cannot have incoming wires");
        break;
      case BlockKind::Output:
        if (net.output_index_ >= 0) throw BuildError("netlist has more than one output block");
        net.output_index_ = i;
        if (fanin != 1) throw BuildError("output block '" + blk.name + "' needs exactly one incoming wire");
        break;
      case BlockKind::Relay:
      case BlockKind::Gain:
        if (fanin != 1) throw BuildError("block '" + blk.name + "' needs exactly one incoming wire");
        break;
      case BlockKind::Sum:
        if (fanin < 1) throw BuildError("sum block '" + blk.name + "' needs at least one incoming wire");
        break;
    }
  }
  if (net.input_index_ < 0) throw BuildError("netlist needs an input block");
  if (net.output_index_ < 0) throw BuildError("netlist needs an output block");

  // Kahn's algorithm; ties broken by declaration order so evaluation is
  // deterministic.
  std::vector<int> indegree(n);
  for (int i = 0; i < n; ++i) indegree[i] = static_cast<int>(net.inputs_[i].size());
  std::deque<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    const int i = ready.front();
    ready.pop_front();
    net.order_.push_back(i);
    for (int j : outputs[i])
      if (--indegree[j] == 0) ready.push_back(j);
  }
  if (static_cast<int>(net.order_.size()) != n) {
    // Walk the residual graph to name one cycle.
    int start = -1;
    for (int i = 0; i < n; ++i)
      if (indegree[i] > 0) { start = i; break; }
    std::vector<int> path;
    std::vector<char> seen(n, 0);
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = 1;
      path.push_back(cur);
      for (int up : net.inputs_[cur]) {
        if (indegree[up] > 0) { cur = up; break; }
      }
    }
    std::ostringstream os;
    os << "netlist contains a cycle:";
    const auto loop_start = std::find(path.begin(), path.end(), cur);
    for (auto it = loop_start; it != path.end(); ++it)
      os << " " << net.blocks_[*it].name << " <-";
    os << " " << net.blocks_[cur].name;
    throw BuildError(os.str());
  }

  // Reachability from input (forward) and to output (backward).
  std::vector<char> from_input(n, 0);
  std::deque<int> queue{net.input_index_};
  from_input[net.input_index_] = 1;
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int j : outputs[i])
      if (!from_input[j]) { from_input[j] = 1; queue.push_back(j); }
  }
  std::vector<char> to_output(n, 0);
  queue = {net.output_index_};
  to_output[net.output_index_] = 1;
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int j : net.inputs_[i])
      if (!to_output[j]) { to_output[j] = 1; queue.push_back(j); }
  }
  for (int i = 0; i < n; ++i) {
    if (!from_input[i])
      throw BuildError("block '" + net.blocks_[i].name + "' is not reachable from the input");
    if (!to_output[i])
      throw BuildError("block '" + net.blocks_[i].name + "' does not reach the output");
  }

  net.values_.assign(n, 0.0);
  return net;
}

double BlockNetwork::step(double x) {
  if (!std::isfinite(x)) throw InputError("network input must be finite");
  for (int i : order_) {
    Block& blk = blocks_[i];
    switch (blk.kind) {
      case BlockKind::Input:
        values_[i] = x;
        break;
      case BlockKind::Output:
        values_[i] = values_[inputs_[i][0]];
        break;
      case BlockKind::Gain:
        values_[i] = blk.gain * values_[inputs_[i][0]];
        break;
      case BlockKind::Sum: {
        double sum = 0.0;
        for (int j : inputs_[i]) sum += values_[j];
        values_[i] = sum;
        break;
      }
      case BlockKind::Relay: {
        const double u = values_[inputs_[i][0]];
        if (blk.relay_spec.polarity == Polarity::Noninverting) {
          if (u > blk.relay_spec.set_threshold) blk.relay_state = 1;
          else if (u < blk.relay_spec.reset_threshold) blk.relay_state = 0;
        } else {
          if (u < blk.relay_spec.set_threshold) blk.relay_state = 1;
          else if (u > blk.relay_spec.reset_threshold) blk.relay_state = 0;
        }
        values_[i] = blk.relay_state;
        break;
      }
    }
  }
  return values_[output_index_];
}

std::string cell_network_description(double a, double b, double x0) {
  const RelayUnit ra = RelayUnit::from_input(RelaySpec::inverting(a, b), x0, 1);
  const RelayUnit rb =
      RelayUnit::from_input(RelaySpec::noninverting(1.0 + a, b), x0 + ra.output(), 0);
  std::ostringstream os;
  os.precision(17);
  os << "block in input\n"
     << "block A relay inverting set=" << a << " reset=" << b
     << " init=" << ra.output() << "\n"
     << "block s sum\n"
     << "block B relay noninverting set=" << (1.0 + a) << " reset=" << b
     << " init=" << rb.output() << "\n"
     << "block out output\n"
     << "wire in -> A\n"
     << "wire in -> s\n"
     << "wire A -> s\n"
     << "wire s -> B\n"
     << "wire B -> out\n";
  return os.str();
}

}  // namespace prot
