#include "improv/protocol.h"

#include <string>

#include "improv/snapshot_json.h"

namespace improv {

using nlohmann::json;

namespace {

// Thrown while decoding a frame; becomes an error reply.
struct BadMessage {
  std::string msg;
};

int int_field(const json& msg, const char* key) {
  auto it = msg.find(key);
  if (it == msg.end()) throw BadMessage{std::string("missing field: ") + key};
  if (!it->is_number_integer()) throw BadMessage{std::string("field must be an integer: ") + key};
  const auto v = it->get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) throw BadMessage{std::string("field out of range: ") + key};
  return static_cast<int>(v);
}

json ack(const char* of) { return json{{"type", "ack"}, {"of", of}}; }

}  // namespace

json error_message(std::string_view text) {
  return json{{"type", "error"}, {"msg", std::string(text)}};
}

ProtocolSession::ProtocolSession(const Params& defaults, SessionOptions options,
                                 std::uint64_t seed)
    : defaults_(defaults), options_(options), session_(defaults, seed, options) {}

json ProtocolSession::hello() const {
  return json{{"type", "hello"}, {"version", kProtocolVersion}, {"seed", session_.seed()}};
}

json ProtocolSession::handle(std::string_view frame) {
  json msg = json::parse(frame, nullptr, /*allow_exceptions=*/false);
  if (msg.is_discarded()) return error_message("malformed JSON");
  if (!msg.is_object()) return error_message("message must be a JSON object");
  auto type_it = msg.find("type");
  if (type_it == msg.end() || !type_it->is_string()) {
    return error_message("missing field: type");
  }
  const std::string type = type_it->get<std::string>();

  try {
    if (type == "note_in") return on_note_in(msg);
    if (type == "set_params") return on_set_params(msg);
    if (type == "snapshot_request") return json(session_.snapshot());
    if (type == "hello") return on_hello(msg);
  } catch (const BadMessage& e) {
    return error_message(e.msg);
  }
  return error_message("unknown message type: " + type);
}

json ProtocolSession::on_hello(const json& msg) {
  auto it = msg.find("seed");
  if (it == msg.end()) return hello();
  if (!it->is_number_unsigned()) throw BadMessage{"field must be an unsigned integer: seed"};
  if (session_.tick_index() != 0) {
    throw BadMessage{"seed can only be chosen before the first tick"};
  }
  session_ = ImprovSession(defaults_, it->get<std::uint64_t>(), options_);
  return hello();
}

json ProtocolSession::on_note_in(const json& msg) {
  const NoteEvent e{int_field(msg, "pitch"), int_field(msg, "dur_ms"), int_field(msg, "vel")};
  if (auto v = validate_event(e)) {
    throw BadMessage{std::string(field_name(v->field)) + ": " + v->message};
  }
  const std::uint64_t tick = session_.tick_index();
  auto out = session_.tick(e);
  if (out) return note_out(*out);
  json reply = ack("note_in");
  reply["tick"] = tick;
  reply["go"] = session_.go();
  return reply;
}

json ProtocolSession::on_set_params(const json& msg) {
  for (const auto& [key, value] : msg.items()) {
    if (key == "type" || key == "alpha" || key == "beta" || key == "tau") continue;
    if (key == "gamma" || key == "c" || key == "n") {
      throw BadMessage{key + " is fixed for the lifetime of a session"};
    }
    throw BadMessage{"unknown parameter: " + key};
  }

  // Validate everything before touching the session.
  Params next = session_.params();
  if (auto it = msg.find("alpha"); it != msg.end()) {
    if (!it->is_number()) throw BadMessage{"field must be a number: alpha"};
    next.alpha = it->get<double>();
  }
  if (auto it = msg.find("beta"); it != msg.end()) {
    if (!it->is_string()) throw BadMessage{"field must be a \"NUM/DEN\" string: beta"};
    try {
      next.beta = Ratio::parse(it->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw BadMessage{std::string("beta: ") + e.what()};
    }
  }
  if (auto it = msg.find("tau"); it != msg.end()) {
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() > UINT32_MAX) {
      throw BadMessage{"field must be a positive integer: tau"};
    }
    next.tau = it->get<std::uint32_t>();
  }
  if (auto err = next.check()) throw BadMessage{*err};

  session_.set_alpha(next.alpha);
  session_.set_beta(next.beta);
  session_.set_tau(next.tau);

  json reply = ack("set_params");
  reply["alpha"] = next.alpha;
  reply["beta"] = next.beta.str();
  reply["tau"] = next.tau;
  return reply;
}

std::optional<json> ProtocolSession::silent_tick() {
  auto out = session_.tick(std::nullopt);
  if (!out) return std::nullopt;
  return note_out(*out);
}

json ProtocolSession::note_out(const NoteEvent& e) const {
  // tick() has already advanced the counter past the emitting tick.
  return json{{"type", "note_out"},
              {"tick", session_.tick_index() - 1},
              {"pitch", e.pitch},
              {"dur_ms", e.dur_ms},
              {"vel", e.vel}};
}

}  // namespace improv
