#include "improv/service.h"

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <iostream>
#include <thread>
#include <vector>

#include "improv/protocol.h"

namespace improv {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

struct Shared {
  ServiceConfig cfg;
  SeedCounter seeds;

  explicit Shared(ServiceConfig c) : cfg(std::move(c)), seeds(cfg.first_seed) {}
};

void log_error(const char* what, beast::error_code ec) {
  if (ec == asio::error::operation_aborted || ec == websocket::error::closed ||
      ec == http::error::end_of_stream || ec == asio::error::eof) {
    return;
  }
  std::clog << "improv-service: " << what << ": " << ec.message() << '\n';
}

// One WebSocket client. All handlers run on the connection's strand, so the
// session never sees interleaved operations.
class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, std::shared_ptr<Shared> shared)
      : ws_(std::move(socket)),
        shared_(std::move(shared)),
        proto_(shared_->cfg.defaults, shared_->cfg.options, shared_->seeds.take()),
        metronome_(ws_.get_executor()) {}

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.text(true);
    ws_.async_accept(req, beast::bind_front_handler(&WsConnection::on_accept,
                                                    shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return log_error("accept", ec);
    send(proto_.hello().dump());
    if (shared_->cfg.metronome) arm_metronome();
    do_read();
  }

  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read,
                                                      shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      metronome_.cancel();
      return log_error("read", ec);
    }
    const std::string frame = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    send(proto_.handle(frame).dump());
    do_read();
  }

  void arm_metronome() {
    metronome_.expires_after(*shared_->cfg.metronome);
    metronome_.async_wait([self = shared_from_this()](beast::error_code ec) {
      if (ec || self->closed_) return;
      if (auto out = self->proto_.silent_tick()) self->send(out->dump());
      self->arm_metronome();
    });
  }

  void send(std::string text) {
    outbox_.push_back(std::move(text));
    if (outbox_.size() == 1) do_write();
  }

  void do_write() {
    ws_.async_write(asio::buffer(outbox_.front()),
                    beast::bind_front_handler(&WsConnection::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      metronome_.cancel();
      return log_error("write", ec);
    }
    outbox_.pop_front();
    if (!outbox_.empty()) do_write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Shared> shared_;
  ProtocolSession proto_;
  asio::steady_timer metronome_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  bool closed_ = false;
};

// Reads one HTTP request: upgrades to WebSocket, or answers /healthz.
class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, std::shared_ptr<Shared> shared)
      : stream_(std::move(socket)), shared_(std::move(shared)) {}

  void run() {
    asio::dispatch(stream_.get_executor(),
                   beast::bind_front_handler(&HttpConnection::do_read, shared_from_this()));
  }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return log_error("http read", ec);
    if (websocket::is_upgrade(req_)) {
      stream_.expires_never();
      std::make_shared<WsConnection>(stream_.release_socket(), shared_)->run(std::move(req_));
      return;
    }

    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(req_.version());
    res->keep_alive(req_.keep_alive());
    res->set(http::field::content_type, "text/plain");
    if (req_.method() == http::verb::get && req_.target() == "/healthz") {
      res->result(http::status::ok);
      res->body() = "ok";
    } else {
      res->result(http::status::not_found);
      res->body() = "not found";
    }
    res->prepare_payload();
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                        if (ec) return log_error("http write", ec);
                        if (res->keep_alive()) {
                          self->do_read();
                        } else {
                          beast::error_code ignored;
                          self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                        }
                      });
  }

  beast::tcp_stream stream_;
  std::shared_ptr<Shared> shared_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

struct Service::Impl {
  asio::io_context ioc;
  std::shared_ptr<Shared> shared;
  tcp::acceptor acceptor;
  std::vector<std::thread> threads;
  std::optional<asio::executor_work_guard<asio::io_context::executor_type>> work;

  explicit Impl(ServiceConfig cfg)
      : ioc(static_cast<int>(std::max(1u, cfg.threads))),
        shared(std::make_shared<Shared>(std::move(cfg))),
        acceptor(asio::make_strand(ioc)) {
    if (auto err = shared->cfg.defaults.check()) {
      throw std::invalid_argument("invalid default params: " + *err);
    }
    beast::error_code ec;
    const tcp::endpoint ep(asio::ip::make_address(shared->cfg.address, ec), shared->cfg.port);
    if (ec) throw std::runtime_error("bad address " + shared->cfg.address + ": " + ec.message());
    acceptor.open(ep.protocol(), ec);
    if (!ec) acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(ep, ec);
    if (!ec) acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec) {
      throw std::runtime_error("cannot listen on " + shared->cfg.address + ":" +
                               std::to_string(shared->cfg.port) + ": " + ec.message());
    }
    do_accept();
  }

  void do_accept() {
    acceptor.async_accept(asio::make_strand(ioc), [this](beast::error_code ec, tcp::socket s) {
      if (ec == asio::error::operation_aborted) return;
      if (ec) {
        log_error("accept", ec);
      } else {
        s.set_option(tcp::no_delay(true), ec);
        std::make_shared<HttpConnection>(std::move(s), shared)->run();
      }
      do_accept();
    });
  }
};

Service::Service(ServiceConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}

Service::~Service() { stop(); }

std::uint16_t Service::port() const { return impl_->acceptor.local_endpoint().port(); }

void Service::start() {
  impl_->work.emplace(impl_->ioc.get_executor());
  const unsigned n = std::max(1u, impl_->shared->cfg.threads);
  for (unsigned i = 0; i < n; ++i) impl_->threads.emplace_back([this] { impl_->ioc.run(); });
}

void Service::run() {
  asio::signal_set signals(impl_->ioc, SIGINT, SIGTERM);
  signals.async_wait([this](beast::error_code, int) { impl_->ioc.stop(); });
  impl_->work.emplace(impl_->ioc.get_executor());
  std::vector<std::thread> extra;
  for (unsigned i = 1; i < std::max(1u, impl_->shared->cfg.threads); ++i) {
    extra.emplace_back([this] { impl_->ioc.run(); });
  }
  impl_->ioc.run();
  for (auto& t : extra) t.join();
}

void Service::stop() {
  if (!impl_) return;
  impl_->work.reset();
  impl_->ioc.stop();
  for (auto& t : impl_->threads) t.join();
  impl_->threads.clear();
}

}  // namespace improv
