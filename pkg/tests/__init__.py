# пустой файл для инициализации пакета tests
