'''
Working example: one seed of the ensemble against two baselines on the built-in Swiss data.
'''
from evostream import load_settings, prepare_context, run_baseline, sf2el_phase
from evostream.baselines import BaselineKind

config = load_settings()
config.swiss.n = 1000
config.schedule.t1 = 500
config.schedule.t2 = 500
config.model.buffer = 30
config.validate()

ctx = prepare_context(config, seed=0)
print("stream: %d rounds, d1=%d, d2=%d" % (len(ctx.stream), ctx.stream.d1, ctx.stream.d2))

ensemble = sf2el_phase(ctx, ctx.initial_phase(True))
print("SF2EL     accuracy %.3f" % ensemble.accuracy)
print("          final weights %.3f / %.3f" % tuple(ensemble.weights[-1]))

for kind in (BaselineKind.NOGD_MR, BaselineKind.UROGD_MR):
    trace = run_baseline(kind, ctx)
    print("%-9s accuracy %.3f" % (kind.value, trace.accuracy))
