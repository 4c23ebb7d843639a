# FluteType main package
