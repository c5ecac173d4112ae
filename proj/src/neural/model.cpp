#include "assetval/neural/model.hpp"

#include <algorithm>
#include <cmath>

#include "assetval/common/error.hpp"

namespace assetval::neural {

namespace {

constexpr double kLnEps = 1e-5;
constexpr double kMaskBias = -1e30;

// y = 0.5 x (1 + erf(x / sqrt(2)))
double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * 0.7071067811865475)); }

double gelu_grad(double x) {
  const double phi = 0.5 * (1.0 + std::erf(x * 0.7071067811865475));
  const double pdf = std::exp(-0.5 * x * x) * 0.3989422804014327;
  return phi + x * pdf;
}

// Y[M,N] = X[M,K] * W[K,N] + b[N]
void linear_forward(const double* X, const double* W, const double* b, double* Y,
                    std::size_t M, std::size_t K, std::size_t N) {
  for (std::size_t i = 0; i < M; ++i) {
    double* yi = Y + i * N;
    for (std::size_t j = 0; j < N; ++j) yi[j] = b ? b[j] : 0.0;
    const double* xi = X + i * K;
    for (std::size_t k = 0; k < K; ++k) {
      const double a = xi[k];
      if (a == 0.0) continue;
      const double* wk = W + k * N;
      for (std::size_t j = 0; j < N; ++j) yi[j] += a * wk[j];
    }
  }
}

// dX += dY * W^T ; dW += X^T * dY ; db += column sums of dY
void linear_backward(const double* X, const double* W, const double* dY, double* dX,
                     double* dW, double* db, std::size_t M, std::size_t K, std::size_t N) {
  for (std::size_t i = 0; i < M; ++i) {
    const double* dyi = dY + i * N;
    if (dX) {
      double* dxi = dX + i * K;
      for (std::size_t k = 0; k < K; ++k) {
        const double* wk = W + k * N;
        double acc = 0.0;
        for (std::size_t j = 0; j < N; ++j) acc += dyi[j] * wk[j];
        dxi[k] += acc;
      }
    }
    const double* xi = X + i * K;
    for (std::size_t k = 0; k < K; ++k) {
      const double a = xi[k];
      if (a == 0.0) continue;
      double* dwk = dW + k * N;
      for (std::size_t j = 0; j < N; ++j) dwk[j] += a * dyi[j];
    }
    if (db) {
      for (std::size_t j = 0; j < N; ++j) db[j] += dyi[j];
    }
  }
}

// Per-position layer norm over the last dimension.
void layer_norm_forward(const double* x, const double* g, const double* b, double* y,
                        double* xhat, double* rstd, std::size_t positions, std::size_t dim) {
  for (std::size_t p = 0; p < positions; ++p) {
    const double* xp = x + p * dim;
    double mean = 0.0;
    for (std::size_t d = 0; d < dim; ++d) mean += xp[d];
    mean /= static_cast<double>(dim);
    double var = 0.0;
    for (std::size_t d = 0; d < dim; ++d) var += (xp[d] - mean) * (xp[d] - mean);
    var /= static_cast<double>(dim);
    const double r = 1.0 / std::sqrt(var + kLnEps);
    rstd[p] = r;
    double* xhp = xhat + p * dim;
    double* yp = y + p * dim;
    for (std::size_t d = 0; d < dim; ++d) {
      xhp[d] = (xp[d] - mean) * r;
      yp[d] = g[d] * xhp[d] + b[d];
    }
  }
}

void layer_norm_backward(const double* dy, const double* xhat, const double* rstd,
                         const double* g, double* dx, double* dg, double* db,
                         std::size_t positions, std::size_t dim) {
  for (std::size_t p = 0; p < positions; ++p) {
    const double* dyp = dy + p * dim;
    const double* xhp = xhat + p * dim;
    double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double dxh = dyp[d] * g[d];
      mean_dxhat += dxh;
      mean_dxhat_xhat += dxh * xhp[d];
      dg[d] += dyp[d] * xhp[d];
      db[d] += dyp[d];
    }
    mean_dxhat /= static_cast<double>(dim);
    mean_dxhat_xhat /= static_cast<double>(dim);
    double* dxp = dx + p * dim;
    for (std::size_t d = 0; d < dim; ++d) {
      const double dxh = dyp[d] * g[d];
      dxp[d] += rstd[p] * (dxh - mean_dxhat - xhp[d] * mean_dxhat_xhat);
    }
  }
}

void fill_dropout_mask(std::vector<double>& mask, std::size_t n, double p, RandomSource* rng) {
  mask.resize(n);
  const double keep_scale = 1.0 / (1.0 - p);
  for (std::size_t i = 0; i < n; ++i) mask[i] = rng->next_double() < p ? 0.0 : keep_scale;
}

void apply_mask(double* x, const std::vector<double>& mask) {
  for (std::size_t i = 0; i < mask.size(); ++i) x[i] *= mask[i];
}

}  // namespace

nlohmann::ordered_json ModelConfig::to_json() const {
  nlohmann::ordered_json j;
  j["d_model"] = d_model;
  j["n_layers"] = n_layers;
  j["n_heads"] = n_heads;
  j["ff_dim"] = ff_dim;
  j["max_len"] = max_len;
  j["dropout"] = dropout;
  j["variant"] = variant_name(variant);
  return j;
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.d_model = j.at("d_model").get<std::size_t>();
  c.n_layers = j.at("n_layers").get<std::size_t>();
  c.n_heads = j.at("n_heads").get<std::size_t>();
  c.ff_dim = j.at("ff_dim").get<std::size_t>();
  c.max_len = j.at("max_len").get<std::size_t>();
  c.dropout = j.at("dropout").get<double>();
  c.variant = variant_from_name(j.at("variant").get<std::string>());
  return c;
}

struct TransformerRegressor::Workspace {
  std::size_t batch = 0;
  std::size_t len = 0;
  std::vector<std::int32_t> ids;
  std::vector<std::uint8_t> mask;
  std::vector<double> emb_mask;
  std::vector<double> x0;
  struct Layer {
    std::vector<double> ln1_xhat, ln1_rstd, a1;
    std::vector<double> q, k, v;
    std::vector<double> probs, attn_mask, peff;
    std::vector<double> concat, out_mask;
    std::vector<double> ln2_xhat, ln2_rstd, a2;
    std::vector<double> ff_pre, ff_act, ff_mask;
  };
  std::vector<Layer> layers;
  std::vector<double> lnf_xhat, lnf_rstd;
  std::vector<double> h;
};

TransformerRegressor::TransformerRegressor(TokenizerVocab vocab, ModelConfig config,
                                           std::uint64_t init_seed)
    : vocab_(std::move(vocab)), config_(config) {
  if (config_.d_model % config_.n_heads != 0)
    raise(Errc::InvalidValue, "d_model must be divisible by n_heads");
  build_registry();
  init_params(init_seed);
  grads_.assign(params_.size(), 0.0);
}

std::size_t TransformerRegressor::offset(const std::string& name) const {
  return offsets_.at(name);
}

void TransformerRegressor::register_tensor(const std::string& name, std::size_t rows,
                                           std::size_t cols) {
  ParamTensor t{name, params_.size(), rows, cols};
  offsets_[name] = t.offset;
  tensors_.push_back(t);
  params_.resize(params_.size() + rows * cols, 0.0);
}

void TransformerRegressor::build_registry() {
  const std::size_t d = config_.d_model, f = config_.ff_dim, v = vocab_.size();
  register_tensor("tok_emb", v, d);
  register_tensor("pos_emb", config_.max_len, d);
  for (std::size_t l = 0; l < config_.n_layers; ++l) {
    const std::string p = "l" + std::to_string(l) + ".";
    register_tensor(p + "ln1.g", 1, d);
    register_tensor(p + "ln1.b", 1, d);
    register_tensor(p + "attn.wq", d, d);
    register_tensor(p + "attn.bq", 1, d);
    register_tensor(p + "attn.wk", d, d);
    register_tensor(p + "attn.bk", 1, d);
    register_tensor(p + "attn.wv", d, d);
    register_tensor(p + "attn.bv", 1, d);
    register_tensor(p + "attn.wo", d, d);
    register_tensor(p + "attn.bo", 1, d);
    register_tensor(p + "ln2.g", 1, d);
    register_tensor(p + "ln2.b", 1, d);
    register_tensor(p + "ffn.w1", d, f);
    register_tensor(p + "ffn.b1", 1, f);
    register_tensor(p + "ffn.w2", f, d);
    register_tensor(p + "ffn.b2", 1, d);
  }
  register_tensor("final_ln.g", 1, d);
  register_tensor("final_ln.b", 1, d);
  register_tensor("head.w", 1, d);
  register_tensor("head.b", 1, 1);
  register_tensor("mlm.bias", 1, v);
}

void TransformerRegressor::init_params(std::uint64_t seed) {
  RandomSource rng(seed);
  for (const auto& t : tensors_) {
    double* p = params_.data() + t.offset;
    const bool is_ln_gain = t.name.ends_with("ln.g") || t.name.ends_with("ln1.g") ||
                            t.name.ends_with("ln2.g");
    const bool is_bias = t.name.ends_with(".b") || t.name.ends_with(".bq") ||
                         t.name.ends_with(".bk") || t.name.ends_with(".bv") ||
                         t.name.ends_with(".bo") || t.name.ends_with(".b1") ||
                         t.name.ends_with(".b2") || t.name == "mlm.bias";
    if (is_ln_gain) {
      std::fill(p, p + t.size(), 1.0);
    } else if (is_bias) {
      std::fill(p, p + t.size(), 0.0);
    } else {
      for (std::size_t i = 0; i < t.size(); ++i) p[i] = 0.02 * rng.next_normal();
    }
  }
}

void TransformerRegressor::zero_grads() { std::fill(grads_.begin(), grads_.end(), 0.0); }

void TransformerRegressor::encoder_forward(std::span<const InputSequence> batch, bool training,
                                           RandomSource* dropout_rng, Workspace& ws) const {
  if (batch.empty()) raise(Errc::EmptyInput, "empty batch");
  const std::size_t d = config_.d_model, h = config_.n_heads, dh = d / h;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const bool use_dropout = training && dropout_rng != nullptr && config_.dropout > 0.0;

  std::size_t len = 1;
  for (const auto& seq : batch) {
    if (seq.ids.size() != config_.max_len)
      raise(Errc::ShapeMismatch, "sequence length differs from model max_len");
    len = std::max(len, seq.real_len);
  }
  const std::size_t B = batch.size(), L = len, P = B * L;

  ws.batch = B;
  ws.len = L;
  ws.ids.resize(P);
  ws.mask.resize(P);
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t t = 0; t < L; ++t) {
      ws.ids[b * L + t] = batch[b].ids[t];
      ws.mask[b * L + t] = batch[b].mask[t];
    }
  }

  // Token + learned position embeddings.
  const double* tok = params_.data() + offset("tok_emb");
  const double* pos = params_.data() + offset("pos_emb");
  ws.x0.resize(P * d);
  for (std::size_t p = 0; p < P; ++p) {
    const double* te = tok + static_cast<std::size_t>(ws.ids[p]) * d;
    const double* pe = pos + (p % L) * d;
    double* xp = ws.x0.data() + p * d;
    for (std::size_t i = 0; i < d; ++i) xp[i] = te[i] + pe[i];
  }
  if (use_dropout) {
    fill_dropout_mask(ws.emb_mask, P * d, config_.dropout, dropout_rng);
    apply_mask(ws.x0.data(), ws.emb_mask);
  } else {
    ws.emb_mask.clear();
  }

  std::vector<double> x = ws.x0;
  ws.layers.resize(config_.n_layers);
  for (std::size_t l = 0; l < config_.n_layers; ++l) {
    auto& lc = ws.layers[l];
    const std::string pre = "l" + std::to_string(l) + ".";
    const double* ln1_g = params_.data() + offset(pre + "ln1.g");
    const double* ln1_b = params_.data() + offset(pre + "ln1.b");

    lc.ln1_xhat.resize(P * d);
    lc.ln1_rstd.resize(P);
    lc.a1.resize(P * d);
    layer_norm_forward(x.data(), ln1_g, ln1_b, lc.a1.data(), lc.ln1_xhat.data(),
                       lc.ln1_rstd.data(), P, d);

    lc.q.resize(P * d);
    lc.k.resize(P * d);
    lc.v.resize(P * d);
    linear_forward(lc.a1.data(), params_.data() + offset(pre + "attn.wq"),
                   params_.data() + offset(pre + "attn.bq"), lc.q.data(), P, d, d);
    linear_forward(lc.a1.data(), params_.data() + offset(pre + "attn.wk"),
                   params_.data() + offset(pre + "attn.bk"), lc.k.data(), P, d, d);
    linear_forward(lc.a1.data(), params_.data() + offset(pre + "attn.wv"),
                   params_.data() + offset(pre + "attn.bv"), lc.v.data(), P, d, d);

    lc.probs.assign(B * h * L * L, 0.0);
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t hh = 0; hh < h; ++hh) {
        for (std::size_t i = 0; i < L; ++i) {
          double* row = lc.probs.data() + ((b * h + hh) * L + i) * L;
          const double* qi = lc.q.data() + (b * L + i) * d + hh * dh;
          double row_max = -1e300;
          for (std::size_t j = 0; j < L; ++j) {
            const double* kj = lc.k.data() + (b * L + j) * d + hh * dh;
            double s = 0.0;
            for (std::size_t c = 0; c < dh; ++c) s += qi[c] * kj[c];
            s *= scale;
            if (!ws.mask[b * L + j]) s = kMaskBias;
            row[j] = s;
            row_max = std::max(row_max, s);
          }
          double denom = 0.0;
          for (std::size_t j = 0; j < L; ++j) {
            row[j] = std::exp(row[j] - row_max);
            denom += row[j];
          }
          for (std::size_t j = 0; j < L; ++j) row[j] /= denom;
        }
      }
    }

    if (use_dropout) {
      fill_dropout_mask(lc.attn_mask, lc.probs.size(), config_.dropout, dropout_rng);
      lc.peff = lc.probs;
      apply_mask(lc.peff.data(), lc.attn_mask);
    } else {
      lc.attn_mask.clear();
      lc.peff = lc.probs;
    }

    lc.concat.assign(P * d, 0.0);
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t hh = 0; hh < h; ++hh) {
        for (std::size_t i = 0; i < L; ++i) {
          double* oi = lc.concat.data() + (b * L + i) * d + hh * dh;
          const double* prow = lc.peff.data() + ((b * h + hh) * L + i) * L;
          for (std::size_t j = 0; j < L; ++j) {
            const double w = prow[j];
            if (w == 0.0) continue;
            const double* vj = lc.v.data() + (b * L + j) * d + hh * dh;
            for (std::size_t c = 0; c < dh; ++c) oi[c] += w * vj[c];
          }
        }
      }
    }

    std::vector<double> attn_out(P * d);
    linear_forward(lc.concat.data(), params_.data() + offset(pre + "attn.wo"),
                   params_.data() + offset(pre + "attn.bo"), attn_out.data(), P, d, d);
    if (use_dropout) {
      fill_dropout_mask(lc.out_mask, P * d, config_.dropout, dropout_rng);
      apply_mask(attn_out.data(), lc.out_mask);
    } else {
      lc.out_mask.clear();
    }
    for (std::size_t i = 0; i < P * d; ++i) x[i] += attn_out[i];

    const double* ln2_g = params_.data() + offset(pre + "ln2.g");
    const double* ln2_b = params_.data() + offset(pre + "ln2.b");
    lc.ln2_xhat.resize(P * d);
    lc.ln2_rstd.resize(P);
    lc.a2.resize(P * d);
    layer_norm_forward(x.data(), ln2_g, ln2_b, lc.a2.data(), lc.ln2_xhat.data(),
                       lc.ln2_rstd.data(), P, d);

    const std::size_t f = config_.ff_dim;
    lc.ff_pre.resize(P * f);
    linear_forward(lc.a2.data(), params_.data() + offset(pre + "ffn.w1"),
                   params_.data() + offset(pre + "ffn.b1"), lc.ff_pre.data(), P, d, f);
    lc.ff_act.resize(P * f);
    for (std::size_t i = 0; i < P * f; ++i) lc.ff_act[i] = gelu(lc.ff_pre[i]);
    std::vector<double> ff_out(P * d);
    linear_forward(lc.ff_act.data(), params_.data() + offset(pre + "ffn.w2"),
                   params_.data() + offset(pre + "ffn.b2"), ff_out.data(), P, f, d);
    if (use_dropout) {
      fill_dropout_mask(lc.ff_mask, P * d, config_.dropout, dropout_rng);
      apply_mask(ff_out.data(), lc.ff_mask);
    } else {
      lc.ff_mask.clear();
    }
    for (std::size_t i = 0; i < P * d; ++i) x[i] += ff_out[i];
  }

  ws.lnf_xhat.resize(P * d);
  ws.lnf_rstd.resize(P);
  ws.h.resize(P * d);
  layer_norm_forward(x.data(), params_.data() + offset("final_ln.g"),
                     params_.data() + offset("final_ln.b"), ws.h.data(), ws.lnf_xhat.data(),
                     ws.lnf_rstd.data(), P, d);
}

void TransformerRegressor::encoder_backward(const Workspace& ws, std::vector<double>& d_hidden) {
  const std::size_t d = config_.d_model, h = config_.n_heads, dh = d / h;
  const std::size_t B = ws.batch, L = ws.len, P = B * L;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  std::vector<double> dx(P * d, 0.0);
  layer_norm_backward(d_hidden.data(), ws.lnf_xhat.data(), ws.lnf_rstd.data(),
                      params_.data() + offset("final_ln.g"), dx.data(),
                      grads_.data() + offset("final_ln.g"),
                      grads_.data() + offset("final_ln.b"), P, d);

  const std::size_t f = config_.ff_dim;
  std::vector<double> d_ff_out(P * d), d_act(P * f), d_pre(P * f), d_a2(P * d);
  std::vector<double> d_attn_out(P * d), d_concat(P * d), d_q(P * d), d_k(P * d), d_v(P * d);
  std::vector<double> d_a1(P * d), d_peff, d_probs;

  for (std::size_t li = config_.n_layers; li-- > 0;) {
    const auto& lc = ws.layers[li];
    const std::string pre = "l" + std::to_string(li) + ".";

    // FFN block
    d_ff_out = dx;
    if (!lc.ff_mask.empty()) apply_mask(d_ff_out.data(), lc.ff_mask);
    std::fill(d_act.begin(), d_act.end(), 0.0);
    linear_backward(lc.ff_act.data(), params_.data() + offset(pre + "ffn.w2"), d_ff_out.data(),
                    d_act.data(), grads_.data() + offset(pre + "ffn.w2"),
                    grads_.data() + offset(pre + "ffn.b2"), P, f, d);
    for (std::size_t i = 0; i < P * f; ++i) d_pre[i] = d_act[i] * gelu_grad(lc.ff_pre[i]);
    std::fill(d_a2.begin(), d_a2.end(), 0.0);
    linear_backward(lc.a2.data(), params_.data() + offset(pre + "ffn.w1"), d_pre.data(),
                    d_a2.data(), grads_.data() + offset(pre + "ffn.w1"),
                    grads_.data() + offset(pre + "ffn.b1"), P, d, f);
    layer_norm_backward(d_a2.data(), lc.ln2_xhat.data(), lc.ln2_rstd.data(),
                        params_.data() + offset(pre + "ln2.g"), dx.data(),
                        grads_.data() + offset(pre + "ln2.g"),
                        grads_.data() + offset(pre + "ln2.b"), P, d);

    // Attention block
    d_attn_out = dx;
    if (!lc.out_mask.empty()) apply_mask(d_attn_out.data(), lc.out_mask);
    std::fill(d_concat.begin(), d_concat.end(), 0.0);
    linear_backward(lc.concat.data(), params_.data() + offset(pre + "attn.wo"),
                    d_attn_out.data(), d_concat.data(),
                    grads_.data() + offset(pre + "attn.wo"),
                    grads_.data() + offset(pre + "attn.bo"), P, d, d);

    d_peff.assign(B * h * L * L, 0.0);
    std::fill(d_v.begin(), d_v.end(), 0.0);
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t hh = 0; hh < h; ++hh) {
        for (std::size_t i = 0; i < L; ++i) {
          const double* doi = d_concat.data() + (b * L + i) * d + hh * dh;
          const double* prow = lc.peff.data() + ((b * h + hh) * L + i) * L;
          double* dprow = d_peff.data() + ((b * h + hh) * L + i) * L;
          for (std::size_t j = 0; j < L; ++j) {
            const double* vj = lc.v.data() + (b * L + j) * d + hh * dh;
            double* dvj = d_v.data() + (b * L + j) * d + hh * dh;
            double acc = 0.0;
            const double w = prow[j];
            for (std::size_t c = 0; c < dh; ++c) {
              acc += doi[c] * vj[c];
              dvj[c] += w * doi[c];
            }
            dprow[j] = acc;
          }
        }
      }
    }

    if (!lc.attn_mask.empty()) apply_mask(d_peff.data(), lc.attn_mask);

    // Softmax rows
    d_probs.assign(B * h * L * L, 0.0);
    for (std::size_t r = 0; r < B * h * L; ++r) {
      const double* prow = lc.probs.data() + r * L;
      const double* dpost = d_peff.data() + r * L;
      double dot = 0.0;
      for (std::size_t j = 0; j < L; ++j) dot += dpost[j] * prow[j];
      double* ds = d_probs.data() + r * L;
      for (std::size_t j = 0; j < L; ++j) ds[j] = prow[j] * (dpost[j] - dot);
    }

    std::fill(d_q.begin(), d_q.end(), 0.0);
    std::fill(d_k.begin(), d_k.end(), 0.0);
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t hh = 0; hh < h; ++hh) {
        for (std::size_t i = 0; i < L; ++i) {
          const double* ds = d_probs.data() + ((b * h + hh) * L + i) * L;
          double* dqi = d_q.data() + (b * L + i) * d + hh * dh;
          const double* qi = lc.q.data() + (b * L + i) * d + hh * dh;
          for (std::size_t j = 0; j < L; ++j) {
            const double coeff = ds[j] * scale;
            if (coeff == 0.0) continue;
            const double* kj = lc.k.data() + (b * L + j) * d + hh * dh;
            double* dkj = d_k.data() + (b * L + j) * d + hh * dh;
            for (std::size_t c = 0; c < dh; ++c) {
              dqi[c] += coeff * kj[c];
              dkj[c] += coeff * qi[c];
            }
          }
        }
      }
    }

    std::fill(d_a1.begin(), d_a1.end(), 0.0);
    linear_backward(lc.a1.data(), params_.data() + offset(pre + "attn.wq"), d_q.data(),
                    d_a1.data(), grads_.data() + offset(pre + "attn.wq"),
                    grads_.data() + offset(pre + "attn.bq"), P, d, d);
    linear_backward(lc.a1.data(), params_.data() + offset(pre + "attn.wk"), d_k.data(),
                    d_a1.data(), grads_.data() + offset(pre + "attn.wk"),
                    grads_.data() + offset(pre + "attn.bk"), P, d, d);
    linear_backward(lc.a1.data(), params_.data() + offset(pre + "attn.wv"), d_v.data(),
                    d_a1.data(), grads_.data() + offset(pre + "attn.wv"),
                    grads_.data() + offset(pre + "attn.bv"), P, d, d);
    layer_norm_backward(d_a1.data(), lc.ln1_xhat.data(), lc.ln1_rstd.data(),
                        params_.data() + offset(pre + "ln1.g"), dx.data(),
                        grads_.data() + offset(pre + "ln1.g"),
                        grads_.data() + offset(pre + "ln1.b"), P, d);
  }

  if (!ws.emb_mask.empty()) apply_mask(dx.data(), ws.emb_mask);
  double* d_tok = grads_.data() + offset("tok_emb");
  double* d_pos = grads_.data() + offset("pos_emb");
  for (std::size_t p = 0; p < P; ++p) {
    const double* dxp = dx.data() + p * d;
    double* te = d_tok + static_cast<std::size_t>(ws.ids[p]) * d;
    double* pe = d_pos + (p % L) * d;
    for (std::size_t i = 0; i < d; ++i) {
      te[i] += dxp[i];
      pe[i] += dxp[i];
    }
  }
}

std::vector<double> TransformerRegressor::predict_log(
    std::span<const InputSequence> batch) const {
  std::vector<double> out;
  out.reserve(batch.size());
  const double* head_w = params_.data() + offset("head.w");
  const double head_b = params_[offset("head.b")];
  const std::size_t d = config_.d_model;
  constexpr std::size_t kChunk = 64;
  Workspace ws;
  for (std::size_t start = 0; start < batch.size(); start += kChunk) {
    const std::size_t n = std::min(kChunk, batch.size() - start);
    encoder_forward(batch.subspan(start, n), false, nullptr, ws);
    for (std::size_t b = 0; b < n; ++b) {
      const double* cls = ws.h.data() + b * ws.len * d;
      double pred = head_b;
      for (std::size_t i = 0; i < d; ++i) pred += head_w[i] * cls[i];
      out.push_back(pred);
    }
  }
  return out;
}

double TransformerRegressor::regression_loss(std::span<const InputSequence> batch,
                                             std::span<const double> targets_log) const {
  if (batch.size() != targets_log.size())
    raise(Errc::ShapeMismatch, "batch and targets must align");
  const auto preds = predict_log(batch);
  double loss = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double diff = preds[i] - targets_log[i];
    loss += diff * diff;
  }
  return loss / static_cast<double>(preds.size());
}

double TransformerRegressor::regression_loss_and_grad(std::span<const InputSequence> batch,
                                                      std::span<const double> targets_log,
                                                      bool training, RandomSource* dropout_rng) {
  if (batch.size() != targets_log.size())
    raise(Errc::ShapeMismatch, "batch and targets must align");
  Workspace ws;
  encoder_forward(batch, training, dropout_rng, ws);
  const std::size_t d = config_.d_model, B = ws.batch, L = ws.len;
  const double* head_w = params_.data() + offset("head.w");
  const double head_b = params_[offset("head.b")];

  std::vector<double> preds(B);
  double loss = 0.0;
  for (std::size_t b = 0; b < B; ++b) {
    const double* cls = ws.h.data() + b * L * d;
    double pred = head_b;
    for (std::size_t i = 0; i < d; ++i) pred += head_w[i] * cls[i];
    preds[b] = pred;
    const double diff = pred - targets_log[b];
    loss += diff * diff;
  }
  loss /= static_cast<double>(B);

  std::vector<double> d_hidden(B * L * d, 0.0);
  double* d_head_w = grads_.data() + offset("head.w");
  double* d_head_b = grads_.data() + offset("head.b");
  for (std::size_t b = 0; b < B; ++b) {
    const double d_pred = 2.0 * (preds[b] - targets_log[b]) / static_cast<double>(B);
    const double* cls = ws.h.data() + b * L * d;
    double* dcls = d_hidden.data() + b * L * d;
    for (std::size_t i = 0; i < d; ++i) {
      dcls[i] += d_pred * head_w[i];
      d_head_w[i] += d_pred * cls[i];
    }
    *d_head_b += d_pred;
  }
  encoder_backward(ws, d_hidden);
  return loss;
}

double TransformerRegressor::mlm_loss(std::span<const InputSequence> batch,
                                      std::span<const MlmTarget> targets) const {
  if (targets.empty()) return 0.0;
  Workspace ws;
  encoder_forward(batch, false, nullptr, ws);
  const std::size_t d = config_.d_model, v = vocab_.size(), L = ws.len;
  const double* tok = params_.data() + offset("tok_emb");
  const double* bias = params_.data() + offset("mlm.bias");
  double loss = 0.0;
  std::vector<double> logits(v);
  for (const auto& t : targets) {
    const double* hp = ws.h.data() + (t.seq * L + t.pos) * d;
    double max_logit = -1e300;
    for (std::size_t c = 0; c < v; ++c) {
      double s = bias[c];
      const double* te = tok + c * d;
      for (std::size_t i = 0; i < d; ++i) s += hp[i] * te[i];
      logits[c] = s;
      max_logit = std::max(max_logit, s);
    }
    double denom = 0.0;
    for (std::size_t c = 0; c < v; ++c) denom += std::exp(logits[c] - max_logit);
    loss += -(logits[static_cast<std::size_t>(t.label)] - max_logit - std::log(denom));
  }
  return loss / static_cast<double>(targets.size());
}

double TransformerRegressor::mlm_loss_and_grad(std::span<const InputSequence> batch,
                                               std::span<const MlmTarget> targets, bool training,
                                               RandomSource* dropout_rng) {
  if (targets.empty()) return 0.0;
  Workspace ws;
  encoder_forward(batch, training, dropout_rng, ws);
  const std::size_t d = config_.d_model, v = vocab_.size(), B = ws.batch, L = ws.len;
  const double* tok = params_.data() + offset("tok_emb");
  const double* bias = params_.data() + offset("mlm.bias");
  double* d_tok = grads_.data() + offset("tok_emb");
  double* d_bias = grads_.data() + offset("mlm.bias");

  std::vector<double> d_hidden(B * L * d, 0.0);
  std::vector<double> logits(v), probs(v);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(targets.size());
  for (const auto& t : targets) {
    const double* hp = ws.h.data() + (t.seq * L + t.pos) * d;
    double max_logit = -1e300;
    for (std::size_t c = 0; c < v; ++c) {
      double s = bias[c];
      const double* te = tok + c * d;
      for (std::size_t i = 0; i < d; ++i) s += hp[i] * te[i];
      logits[c] = s;
      max_logit = std::max(max_logit, s);
    }
    double denom = 0.0;
    for (std::size_t c = 0; c < v; ++c) {
      probs[c] = std::exp(logits[c] - max_logit);
      denom += probs[c];
    }
    for (std::size_t c = 0; c < v; ++c) probs[c] /= denom;
    loss += -std::log(std::max(probs[static_cast<std::size_t>(t.label)], 1e-300));

    double* dhp = d_hidden.data() + (t.seq * L + t.pos) * d;
    for (std::size_t c = 0; c < v; ++c) {
      const double dlogit =
          (probs[c] - (c == static_cast<std::size_t>(t.label) ? 1.0 : 0.0)) * inv_n;
      if (dlogit == 0.0) continue;
      const double* te = tok + c * d;
      double* dte = d_tok + c * d;
      for (std::size_t i = 0; i < d; ++i) {
        dhp[i] += dlogit * te[i];
        dte[i] += dlogit * hp[i];
      }
      d_bias[c] += dlogit;
    }
  }
  encoder_backward(ws, d_hidden);
  return loss * inv_n;
}

}  // namespace assetval::neural
