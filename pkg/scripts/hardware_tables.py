"""Print the analytic latency/throughput tables for the second- and third-order decoders."""

from rmipa.pipeline_model import PipelineConfig, reg_array_depth, report


def row(cfg):
    rep = report(cfg)
    return (
        f"RM({cfg.m},{cfg.r})  P={cfg.P:<3d} N_Dec={cfg.decoders:<2d} f={cfg.f_mhz:g} MHz  "
        f"D={reg_array_depth(cfg)}  {rep.latency_cycles:4d} cc  {rep.latency_us:.3f} us  {rep.throughput_mbps:g} Mbps"
    )


def main():
    print("second order, t_fod=4, n_max=2")
    for P in (1, 2, 4, 8, 16, 32, 64, 128):
        print("  " + row(PipelineConfig(7, 2, P, 555)))
    print("third order, t_fod=4, n_max=2")
    for P, n_dec in ((16, None), (32, None), (64, 2), (128, 4), (256, 8)):
        print("  " + row(PipelineConfig(6, 3, P, 714, n_dec=n_dec)))
    print(report(PipelineConfig(6, 3, 32, 714)).note)


if __name__ == "__main__":
    main()
