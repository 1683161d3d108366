#include "mforge/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace mforge {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(const unsigned char* data, std::size_t len) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<char>((v >> s) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int s = 0; s < 64; s += 8) out.push_back(static_cast<char>((v >> s) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int b = 3; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

void put_f64_le(std::string& out, double d) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
  put_u64(out, bits);
}

double get_f64_le(const unsigned char* p) { return std::bit_cast<double>(get_u64(p)); }

json translator_config_json(const TranslatorConfig& c) {
  return json{{"n", c.n},
              {"enc_c1", c.enc_c1},
              {"enc_c2", c.enc_c2},
              {"node_dim", c.node_dim},
              {"noise_dim", c.noise_dim},
              {"hidden_activation", to_string(c.hidden_activation)},
              {"output_activation", to_string(c.output_activation)},
              {"symmetrize_output", c.symmetrize_output}};
}

TranslatorConfig translator_config_from_json(const json& j) {
  TranslatorConfig c;
  c.n = j.at("n").get<std::size_t>();
  c.enc_c1 = j.at("enc_c1").get<std::size_t>();
  c.enc_c2 = j.at("enc_c2").get<std::size_t>();
  c.node_dim = j.at("node_dim").get<std::size_t>();
  c.noise_dim = j.at("noise_dim").get<std::size_t>();
  c.hidden_activation = activation_from_string(j.at("hidden_activation").get<std::string>());
  c.output_activation = activation_from_string(j.at("output_activation").get<std::string>());
  c.symmetrize_output = j.at("symmetrize_output").get<bool>();
  return c;
}

json discriminator_config_json(const DiscriminatorConfig& c) {
  return json{{"n", c.n},
              {"c1", c.c1},
              {"c2", c.c2},
              {"node_dim", c.node_dim},
              {"hidden_activation", to_string(c.hidden_activation)}};
}

DiscriminatorConfig discriminator_config_from_json(const json& j) {
  DiscriminatorConfig c;
  c.n = j.at("n").get<std::size_t>();
  c.c1 = j.at("c1").get<std::size_t>();
  c.c2 = j.at("c2").get<std::size_t>();
  c.node_dim = j.at("node_dim").get<std::size_t>();
  c.hidden_activation = activation_from_string(j.at("hidden_activation").get<std::string>());
  return c;
}

}  // namespace

void save_checkpoint(const TranslatorModel& translator, const DiscriminatorModel& discriminator,
                     std::uint64_t seed, const std::string& path) {
  json table = json::array();
  std::string payload;
  auto append = [&](const std::string& prefix,
                    const std::vector<std::pair<std::string, const Tensor*>>& params) {
    for (const auto& [name, tensor] : params) {
      json entry;
      entry["name"] = prefix + name;
      entry["shape"] = tensor->shape();
      table.push_back(entry);
      for (std::size_t i = 0; i < tensor->size(); ++i) put_f64_le(payload, (*tensor)[i]);
    }
  };
  append("translator.", translator.parameters());
  append("discriminator.", discriminator.parameters());

  json header;
  header["translator_config"] = translator_config_json(translator.config);
  header["discriminator_config"] = discriminator_config_json(discriminator.config);
  header["seed"] = seed;
  header["params"] = std::move(table);
  const std::string header_text = header.dump();

  std::string blob;
  blob += "GGAN";
  put_u32(blob, kCheckpointVersion);
  put_u64(blob, header_text.size());
  blob += header_text;
  blob += payload;
  put_u64(blob, fnv1a64(reinterpret_cast<const unsigned char*>(payload.data()), payload.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("save_checkpoint: cannot open " + path);
  out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  if (!out) throw IoError("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_checkpoint: cannot open " + path);
  std::vector<unsigned char> blob((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());

  std::size_t off = 0;
  auto need = [&](std::size_t bytes, const char* what) {
    if (blob.size() - off < bytes) {
      throw FormatError(std::string("load_checkpoint: truncated file (") + what + ")");
    }
  };

  need(4, "magic");
  if (std::memcmp(blob.data(), "GGAN", 4) != 0) {
    throw FormatError("load_checkpoint: bad magic");
  }
  off = 4;
  need(4, "version");
  const std::uint32_t version = get_u32(blob.data() + off);
  off += 4;
  if (version != kCheckpointVersion) {
    throw FormatError("load_checkpoint: unsupported format version");
  }
  need(8, "header length");
  const std::uint64_t header_len = get_u64(blob.data() + off);
  off += 8;
  need(header_len, "header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(blob.begin() + static_cast<std::ptrdiff_t>(off),
                                   blob.begin() + static_cast<std::ptrdiff_t>(off + header_len));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("load_checkpoint: bad header: ") + e.what());
  }
  off += header_len;

  Checkpoint ckpt;
  TranslatorConfig tcfg;
  DiscriminatorConfig dcfg;
  try {
    tcfg = translator_config_from_json(header.at("translator_config"));
    dcfg = discriminator_config_from_json(header.at("discriminator_config"));
    ckpt.seed = header.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("load_checkpoint: bad header: ") + e.what());
  }

  // Materialize models with the recorded configs, then overwrite every tensor
  // from the payload, verifying the name/shape table as we go.
  Prng scratch(0);
  ckpt.translator = TranslatorModel::init(tcfg, scratch);
  ckpt.discriminator = DiscriminatorModel::init(dcfg, scratch);

  std::vector<std::pair<std::string, Tensor*>> registry;
  for (auto& [name, t] : ckpt.translator.parameters()) registry.emplace_back("translator." + name, t);
  for (auto& [name, t] : ckpt.discriminator.parameters()) {
    registry.emplace_back("discriminator." + name, t);
  }

  const auto& table = header.at("params");
  if (!table.is_array() || table.size() != registry.size()) {
    throw FormatError("load_checkpoint: parameter table size mismatch");
  }

  std::size_t payload_doubles = 0;
  for (std::size_t p = 0; p < registry.size(); ++p) {
    const auto& entry = table.at(p);
    if (entry.at("name").get<std::string>() != registry[p].first) {
      throw FormatError("load_checkpoint: parameter name mismatch at index " + std::to_string(p));
    }
    const auto shape = entry.at("shape").get<std::vector<std::size_t>>();
    if (shape != registry[p].second->shape()) {
      throw FormatError("load_checkpoint: parameter shape mismatch for " + registry[p].first);
    }
    payload_doubles += registry[p].second->size();
  }

  need(payload_doubles * 8 + 8, "payload");
  const unsigned char* payload = blob.data() + off;
  const std::uint64_t stored = get_u64(blob.data() + off + payload_doubles * 8);
  const std::uint64_t computed = fnv1a64(payload, payload_doubles * 8);
  if (stored != computed) {
    throw ChecksumMismatch("load_checkpoint: payload checksum mismatch");
  }

  std::size_t cursor = 0;
  for (auto& [name, tensor] : registry) {
    for (std::size_t i = 0; i < tensor->size(); ++i) {
      (*tensor)[i] = get_f64_le(payload + cursor);
      cursor += 8;
    }
  }
  return ckpt;
}

}  // namespace mforge
